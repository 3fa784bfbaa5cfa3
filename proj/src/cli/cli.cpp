#include "trivec/cli/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "trivec/algebra/solve.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/e8/e8.hpp"
#include "trivec/flags/flags.hpp"
#include "trivec/io/json_io.hpp"
#include "trivec/loci/loci.hpp"
#include "trivec/stability/stability.hpp"

namespace trivec::cli {

using io::json;
using FF = FiniteField;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_input, "cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx.get(), buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

namespace {

struct Globals {
  u64 seed = 0;
  std::optional<u64> budget;
  unsigned threads = 0;
  bool timing = false;
};

struct Context {
  Globals g;
  json inputs = json::object();

  json load(const std::string& role, const std::string& path) {
    auto j = io::read_json_file(path);
    inputs[role] = {{"path", path}, {"sha256", file_digest(path)}};
    return j;
  }
};

// q = p^k
std::pair<u64, unsigned> prime_power(u64 q) {
  if (q < 2) fail(Errc::invalid_input, "field order must be a prime power, got " + std::to_string(q));
  u64 p = 0;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (!p) return {q, 1};
  unsigned k = 0;
  u64 r = q;
  while (r % p == 0) r /= p, ++k;
  if (r != 1) fail(Errc::invalid_input, std::to_string(q) + " is not a prime power");
  return {p, k};
}

FF field_of_order(u64 q) {
  auto [p, k] = prime_power(q);
  FF K = FF::prime(p);
  return k == 1 ? K : extension_field(K, k);
}

u64 reduce_rational(const FF& L, const mpq_class& a) {
  mpz_class den = a.get_den();
  if (den % mpz_class(L.characteristic()) == 0)
    fail(Errc::invalid_input, "denominator of " + a.get_str() + " vanishes modulo " + std::to_string(L.characteristic()));
  return L.div(L.from_mpz(a.get_num()), L.from_mpz(den));
}

// the input over F_q (an extension of its own field, or a reduction of Q)
Trivector<FF> over_finite(const io::AnyTrivector& any, std::optional<u64> q) {
  if (auto* t = std::get_if<Trivector<FF>>(&any)) {
    if (!q || *q == t->field().order()) return *t;
    const u64 base = t->field().order();
    unsigned d = 1;
    u64 acc = base;
    while (acc < *q && acc <= *q / base) acc *= base, ++d;
    if (acc != *q) fail(Errc::field_mismatch, "--q " + std::to_string(*q) + " is not a power of |" + t->field().spec() + "|");
    return embed_trivector(*t, FieldEmbedding(t->field(), extension_field(t->field(), d)));
  }
  if (!q) fail(Errc::unsupported_field, "this command needs a finite field: pass --q for a rational input");
  const auto& tq = std::get<Trivector<Rationals>>(any);
  FF L = field_of_order(*q);
  Trivector<FF> out(L);
  for (int s = 0; s < kTriples; ++s) out[s] = reduce_rational(L, tq[s]);
  return out;
}

CurveCoeffs<FF> curve_over_finite(const io::AnyCurve& any, std::optional<u64> q) {
  if (auto* c = std::get_if<CurveCoeffs<FF>>(&any)) {
    if (!q || *q == c->field.order()) return *c;
    auto t = over_finite(build_gamma_c(*c), q);
    return *match_gamma_c(t);
  }
  if (!q) fail(Errc::unsupported_field, "this command needs a finite field: pass --q for a rational input");
  const auto& cq = std::get<CurveCoeffs<Rationals>>(any);
  FF L = field_of_order(*q);
  CurveCoeffs<FF> out(L);
  for (int i = 0; i < 8; ++i) out.c[i] = reduce_rational(L, cq.c[i]);
  return out;
}

json points_json(const FF& f, const std::vector<std::vector<u64>>& pts) {
  json a = json::array();
  for (const auto& p : pts) {
    json r = json::array();
    for (u64 v : p) r.push_back(f.to_string(v));
    a.push_back(r);
  }
  return a;
}

json verdict_json(const StabilityVerdict& v) {
  json j = {{"status", status_name(v.status)},
            {"searched_ext_degree", v.searched_ext_degree},
            {"geometric", v.geometric},
            {"examined", v.examined},
            {"notes", v.notes}};
  if (v.witness) j["witness"] = {{"field", v.witness->field().spec()}, {"U", io::matrix_to_json(*v.witness)}};
  return j;
}

json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

int exit_for(Errc e) {
  return e == Errc::disagreement || e == Errc::certificate_failure ? Exit::disagreement : Exit::usage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  Context ctx;
  std::string command;
  std::function<json()> action;

  CLI::App app{"trivectors of a 9-dimensional space and genus-2 curves"};
  app.set_version_flag("--version", "trivec 1.0");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", ctx.g.seed, "PRNG seed for randomized sampling")->capture_default_str();
  app.add_option("--budget", ctx.g.budget, "cap on enumeration sizes");
  app.add_option("--threads", ctx.g.threads, "worker threads (0: all cores)")->capture_default_str();
  app.add_flag("--timing", ctx.g.timing, "add elapsed_ms to the report");

  auto stab_opts = [&] {
    StabilityOptions o;
    o.threads = ctx.g.threads;
    if (ctx.g.budget) o.budget = *ctx.g.budget;
    return o;
  };
  auto loci_opts = [&] {
    LociOptions o;
    o.threads = ctx.g.threads;
    if (ctx.g.budget) o.budget = *ctx.g.budget;
    return o;
  };
  auto flag_opts = [&] {
    FlagOptions o;
    o.threads = ctx.g.threads;
    if (ctx.g.budget) o.scan_budget = o.theta_budget = *ctx.g.budget;
    return o;
  };
  auto select = [&](CLI::App* sub, std::string name, std::function<json()> fn) {
    sub->callback([&command, &action, name = std::move(name), fn = std::move(fn)] {
      command = name;
      action = fn;
    });
  };

  // ---- gamma ----
  auto* gamma = app.add_subcommand("gamma", "build gamma_c or act on a trivector");
  gamma->require_subcommand(1);
  std::string field_spec_s, out_path, gamma_path, matrix_path, perm;
  std::vector<std::string> sets;
  bool relabel = false;
  auto* build = gamma->add_subcommand("build", "gamma_c from Weierstrass coefficients");
  build->add_option("--field", field_spec_s, "field spec, e.g. GF(2), GF(2^2), Q")->required();
  build->add_option("--set", sets, "coefficients as cK=value, e.g. c15=1");
  build->add_option("-o,--output", out_path, "write the trivector JSON here");
  select(build, "gamma build", [&]() -> json {
    auto any = parse_field(field_spec_s);
    return std::visit(
        [&](const auto& f) -> json {
          CurveCoeffs<std::decay_t<decltype(f)>> c(f);
          for (const auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) fail(Errc::invalid_input, "--set expects cK=value, got " + s);
            std::string key = s.substr(0, eq);
            if (!key.empty() && (key[0] == 'c' || key[0] == 'C')) key.erase(0, 1);
            int w = 0;
            try {
              w = std::stoi(key);
            } catch (const std::exception&) {
              fail(Errc::invalid_input, "--set key is not a weight: " + s);
            }
            c(w) = f.parse(s.substr(eq + 1));
          }
          auto t = build_gamma_c(c);
          auto tj = io::trivector_to_json(t);
          json v = {{"field", io::field_name(f)}, {"terms", t.support_size()}, {"curve", io::curve_to_json(c)}};
          if (!out_path.empty()) {
            io::write_json_file(out_path, tj);
            v["output"] = out_path;
          } else {
            v["trivector"] = tj;
          }
          return v;
        },
        any);
  });

  auto act_handler = [&]() -> json {
    auto any = io::any_trivector_from_json(ctx.load("gamma", gamma_path));
    return std::visit(
        [&](const auto& t) -> json {
          using F = std::decay_t<decltype(t.field())>;
          const F& f = t.field();
          Matrix<F> g;
          int given = !matrix_path.empty() + !perm.empty() + relabel;
          if (given != 1) fail(Errc::invalid_input, "act needs exactly one of --matrix, --perm, --relabel");
          if (!matrix_path.empty()) {
            auto mj = ctx.load("matrix", matrix_path);
            g = io::matrix_from_json(f, mj.is_object() ? mj.at("matrix") : mj);
          } else {
            std::vector<int> p;
            if (relabel) {
              p = flag_relabeling();
            } else {
              for (char ch : perm) p.push_back(ch - '0');
              auto sorted = p;
              std::sort(sorted.begin(), sorted.end());
              if (sorted != std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9})
                fail(Errc::invalid_input, "--perm must be a permutation of 123456789");
            }
            g = permutation_matrix(f, p);
          }
          auto r = gl_act(g, t);
          auto rj = io::trivector_to_json(r);
          json v = {{"terms", r.support_size()}};
          if (!out_path.empty()) {
            io::write_json_file(out_path, rj);
            v["output"] = out_path;
          } else {
            v["trivector"] = rj;
          }
          return v;
        },
        any);
  };
  auto add_act = [&](CLI::App* parent) {
    auto* act = parent->add_subcommand("act", "apply g in GL(V) to a trivector");
    act->add_option("--gamma", gamma_path, "trivector JSON")->required();
    act->add_option("--matrix", matrix_path, "9x9 matrix JSON (rows, or {\"matrix\": rows})");
    act->add_option("--perm", perm, "one-line permutation, e.g. 974852631");
    act->add_flag("--relabel", relabel, "the relabeling that makes gamma_c meet the standard flag");
    act->add_option("-o,--output", out_path, "write the trivector JSON here");
    select(act, parent == &app ? "act" : "gamma act", act_handler);
  };
  add_act(gamma);
  add_act(&app);

  // ---- stability ----
  unsigned max_ext = 2;
  auto* stab = app.add_subcommand("stability", "GIT stability verdict with a destabilizing witness");
  stab->add_option("--gamma", gamma_path, "trivector JSON")->required();
  stab->add_option("--max-ext", max_ext, "largest extension degree searched")->capture_default_str();
  select(stab, "stability", [&]() -> json {
    auto any = io::any_trivector_from_json(ctx.load("gamma", gamma_path));
    auto v = std::visit([&](const auto& t) { return stability_verdict(t, max_ext, stab_opts()); }, any);
    return verdict_json(v);
  });

  // ---- loci ----
  auto* loci = app.add_subcommand("loci", "rank loci of the skew pencil");
  loci->require_subcommand(1);
  std::optional<u64> q;
  int max_rank = 4;
  std::string points_path, curve_path, pencil_path;
  auto* count = loci->add_subcommand("count", "points of each rank in P^8(F_q)");
  count->add_option("--gamma", gamma_path)->required();
  count->add_option("--q", q, "field order (an extension of the input field, or a reduction of Q)");
  count->add_option("--max-rank", max_rank, "rank bound for --points")->capture_default_str();
  count->add_option("--points", points_path, "write points of rank <= max-rank here");
  select(count, "loci count", [&]() -> json {
    auto t = over_finite(io::any_trivector_from_json(ctx.load("gamma", gamma_path)), q);
    auto r = enumerate_rank_locus(t, max_rank, !points_path.empty(), loci_opts());
    json counts = json::object();
    for (int i = 0; i < 5; ++i) counts[std::to_string(2 * i)] = r.counts[i];
    json v = {{"field", t.field().spec()}, {"counts", counts}, {"max_rank", max_rank},
              {"at_most_max_rank", r.count_at_most(max_rank)}, {"total", r.total()}};
    if (auto c = match_gamma_c(t); c && curve_is_smooth_closed_form(*c) && t.field().order() <= 4096) {
      auto N = curve_point_counts(*c, {1, 2});
      v["jacobian_order"] = jacobian_order_from_counts(i64(N[0]), i64(N[1]), t.field().order());
    }
    if (!points_path.empty()) {
      if (r.points_truncated) fail(Errc::budget_exceeded, "too many points to write");
      io::write_json_file(points_path, {{"field", t.field().spec()}, {"points", points_json(t.field(), r.points)}});
      v["points"] = points_path;
    }
    return v;
  });

  auto* cubic = loci->add_subcommand("cubic", "the cubic hypersurface through the rank <= 6 locus");
  cubic->add_option("--gamma", gamma_path)->required();
  cubic->add_option("--q", q);
  cubic->add_option("--max-ext", max_ext, "extend the field up to this degree if needed")->capture_default_str();
  cubic->add_option("-o,--output", out_path, "write the CubicForm JSON here");
  select(cubic, "loci cubic", [&]() -> json {
    auto t = over_finite(io::any_trivector_from_json(ctx.load("gamma", gamma_path)), q);
    auto r = cubic_of_Y(t, max_ext, loci_opts());
    auto cj = io::cubic_to_json(r.cubic);
    json v = {{"kernel_dimension", r.kernel_dimension},
              {"sample_points", r.sample_points},
              {"ext_degree", r.ext_degree},
              {"monomials", cj["monomials"].size()}};
    if (!out_path.empty()) {
      io::write_json_file(out_path, cj);
      v["output"] = out_path;
    } else {
      v["cubic"] = cj;
    }
    return v;
  });

  auto* emb = loci->add_subcommand("check-embedding", "certify the curve inside the rank-4 locus");
  emb->add_option("--curve", curve_path, "CurveCoeffs JSON")->required();
  emb->add_option("--q", q);
  select(emb, "loci check-embedding", [&]() -> json {
    auto c = curve_over_finite(io::any_curve_from_json(ctx.load("curve", curve_path)), q);
    auto cert = verify_curve_embedding(c);
    return {{"field", c.field.spec()},
            {"affine_points", cert.affine_points},
            {"weierstrass_point_ok", cert.weierstrass_point_ok},
            {"certified", true}};
  });

  auto* rec = loci->add_subcommand("reconstruct", "recover a trivector from its pencil");
  rec->add_option("--pencil", pencil_path, "{\"field\", \"matrices\": [9 matrices]}")->required();
  rec->add_option("-o,--output", out_path);
  select(rec, "loci reconstruct", [&]() -> json {
    auto pj = ctx.load("pencil", pencil_path);
    return std::visit(
        [&](const auto& f) -> json {
          auto W = io::pencil_from_json(f, pj);
          auto t = reconstruct_from_pencil(W, ctx.g.seed);
          auto tj = io::trivector_to_json(t);
          json v = {{"terms", t.support_size()}};
          if (!out_path.empty()) {
            io::write_json_file(out_path, tj);
            v["output"] = out_path;
          } else {
            v["trivector"] = tj;
          }
          return v;
        },
        io::field_from_json(pj));
  });

  // ---- char3 ----
  auto* c3 = app.add_subcommand("char3", "restricted powers and 3-ranks in characteristic 3");
  c3->require_subcommand(1);
  int exponent = 3;
  auto* pw = c3->add_subcommand("power", "gamma^[e] as a 9x9 matrix modulo scalars");
  pw->add_option("--gamma", gamma_path)->required();
  pw->add_option("--exp", exponent)->required()->check(CLI::IsMember({3, 9, 27}));
  pw->add_option("--q", q);
  select(pw, "char3 power", [&]() -> json {
    auto t = over_finite(io::any_trivector_from_json(ctx.load("gamma", gamma_path)), q);
    auto m = restricted_power(t, exponent);
    return {{"field", t.field().spec()}, {"exp", exponent}, {"modulo_scalars", true}, {"matrix", io::matrix_to_json(m)}};
  });
  auto* rk3 = c3->add_subcommand("rank", "3-rank of the Jacobian, Lie side and coefficient side");
  rk3->add_option("--curve", curve_path)->required();
  rk3->add_option("--q", q);
  select(rk3, "char3 rank", [&]() -> json {
    auto c = curve_over_finite(io::any_curve_from_json(ctx.load("curve", curve_path)), q);
    auto r = three_rank(c);
    return {{"lie", r.lie}, {"coeff", r.coeff}};
  });

  // ---- flags ----
  auto* fl = app.add_subcommand("flags", "flags F1 < F3 < F6 < F8 compatible with a trivector");
  fl->require_subcommand(1);
  std::string flag_path;
  unsigned flag_ext = 1;
  auto* fcheck = fl->add_subcommand("check", "test the 31 vanishing conditions");
  fcheck->add_option("--gamma", gamma_path)->required();
  fcheck->add_option("--flag", flag_path, "flag JSON with F1, F3, F6, F8")->required();
  fcheck->add_option("--q", q);
  select(fcheck, "flags check", [&]() -> json {
    auto t = over_finite(io::any_trivector_from_json(ctx.load("gamma", gamma_path)), q);
    auto fj = ctx.load("flag", flag_path);
    if (fj.contains("field")) {
      auto ff = io::field_from_json(fj);
      if (!std::holds_alternative<FF>(ff) || std::get<FF>(ff) != t.field())
        fail(Errc::field_mismatch, "flag and trivector over different fields");
    }
    auto rep = flag_compatible(t, io::flag_from_json(t.field(), fj));
    json viol = json::array();
    for (auto& [c, val] : rep.violated) viol.push_back({{"ijk", c}, {"c", t.field().to_string(val)}});
    return {{"compatible", rep.compatible}, {"conditions", flag_conditions().size()}, {"violated", viol}};
  });
  auto* fsearch = fl->add_subcommand("search", "compatible flags over extensions up to --max-ext");
  fsearch->add_option("--gamma", gamma_path)->required();
  fsearch->add_option("--q", q);
  fsearch->add_option("--max-ext", flag_ext)->capture_default_str();
  select(fsearch, "flags search", [&]() -> json {
    auto t = over_finite(io::any_trivector_from_json(ctx.load("gamma", gamma_path)), q);
    auto rep = flag_search(t, flag_ext, flag_opts());
    json levels = json::array(), flags = json::array();
    for (const auto& l : rep.levels) {
      json lj = {{"d", l.d}, {"method", l.method}, {"x_points", l.x_points}, {"exhaustive", l.exhaustive},
                 {"flags", l.flags}};
      if (l.expected_x_points) lj["expected_x_points"] = *l.expected_x_points;
      levels.push_back(lj);
    }
    for (const auto& f : rep.flags) {
      auto j = io::flag_to_json(f.flag);
      j["level"] = f.level;
      j["degree"] = f.degree;
      j["point"] = points_json(f.flag.field(), {f.point})[0];
      flags.push_back(j);
    }
    return {{"weighted_count", rep.weighted_count}, {"complete", rep.complete}, {"levels", levels},
            {"flags", flags}, {"notes", rep.notes}};
  });
  auto* chern = fl->add_subcommand("chern", "top Chern class of the rank-31 bundle in the flag variety");
  select(chern, "flags chern", [&]() -> json {
    auto r = chern_top_class();
    return {{"coefficient", mpz_json(r.coefficient)},
            {"exponents", r.exponents},
            {"product_degree", r.product_degree},
            {"remainder_terms", r.remainder_terms}};
  });

  // ---- heisenberg ----
  auto* hz = app.add_subcommand("heisenberg", "Heisenberg group on the exterior cube");
  hz->require_subcommand(1);
  std::string hfield = "GF(7)";
  auto* hinv = hz->add_subcommand("invariants", "the fixed subspace and the Cartan vectors in it");
  hinv->add_option("--field", hfield)->capture_default_str();
  select(hinv, "heisenberg invariants", [&]() -> json {
    auto any = parse_field(hfield);
    if (!std::holds_alternative<FF>(any)) fail(Errc::no_cube_root, "Q has no primitive cube root of unity");
    const FF f = std::get<FF>(any);
    auto inv = heisenberg_invariants(f);
    json basis = json::array(), cartan = json::array();
    for (size_t r = 0; r < inv.basis.rows(); ++r) {
      Trivector<FF> t(f);
      for (int s = 0; s < kTriples; ++s) t[s] = inv.basis(r, s);
      basis.push_back(io::trivector_to_json(t)["terms"]);
    }
    for (int d = 0; d < 4; ++d) {
      u64 a[4] = {0, 0, 0, 0};
      a[d] = 1;
      cartan.push_back(in_row_span(inv.basis, standard_cartan_element<FF>(f, a[0], a[1], a[2], a[3]).coefficients()));
    }
    return {{"field", f.spec()}, {"dimension", inv.dimension}, {"zeta", f.to_string(inv.zeta)},
            {"cartan_in_span", cartan}, {"basis", basis}};
  });

  // ---- selftest ----
  std::optional<int> criterion;
  bool selftest_ok = true;
  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--criterion", criterion, "run only this criterion (1..12)")->check(CLI::Range(1, 12));
  select(st, "selftest", [&]() -> json {
    if (!hooks.selftest) fail(Errc::invalid_input, "selftest is not available in this build");
    json v;
    selftest_ok = hooks.selftest({criterion, ctx.g.seed, ctx.g.threads}, v);
    return v;
  });

  std::vector<const char*> argv{"trivec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::CallForVersion& e) {
    out << "trivec 1.0\n";
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    // help of the deepest subcommand that was named
    const CLI::App* deepest = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const auto* s : deepest->get_subcommands()) {
        deepest = s;
        descended = true;
        break;
      }
    }
    err << deepest->help();
    return Exit::usage;
  }

  json report = {{"command", command}, {"seed", ctx.g.seed}};
  const auto start = std::chrono::steady_clock::now();
  int code = Exit::ok;
  try {
    report["verdict"] = action();
    if (!selftest_ok) code = Exit::disagreement;
  } catch (const Error& e) {
    code = exit_for(e.code());
    report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    err << e.what() << "\n";
  } catch (const std::exception& e) {
    code = Exit::usage;
    report["error"] = {{"code", "invalid_input"}, {"message", e.what()}};
    err << e.what() << "\n";
  }
  report["inputs"] = ctx.inputs;
  if (ctx.g.timing)
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace trivec::cli
