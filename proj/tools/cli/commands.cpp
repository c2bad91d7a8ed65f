#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "aimlinsys/aim.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/families.hpp"
#include "aimlinsys/riccati.hpp"
#include "aimlinsys/solver.hpp"
#include "aimlinsys/verify.hpp"
#include "report.hpp"

namespace aimlinsys::cli {

namespace {

const char* mode_name(EvalMode m) { return m == EvalMode::exact ? "exact" : "numeric"; }

Json header(const std::string& command, const SpecFile& spec, const RunConfig& cfg) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["mode"] = mode_name(cfg.mode);
  Json sys = Json::object();
  for (const auto& [k, e] : spec.system) sys[k] = e.value;
  j["system"] = sys;
  Json params = Json::object();
  for (const auto& [k, v] : cfg.params) params[k] = to_string(v);
  j["params"] = params;
  j["domain"] = Json::array({cfg.domain.lo, cfg.domain.hi});
  return j;
}

Json degrees(const RationalFunction& f) {
  return Json::array({f.num().degree(), f.den().degree()});
}

Json certificate_json(const TerminationCertificate& c) {
  return Json{{"n", c.n},
              {"kind", to_string(c.kind)},
              {"ratio", c.ratio.to_string()},
              {"source", to_string(c.source)}};
}

Rational exact_constant(const CoefficientFn& c) { return c.exact().constant_value(); }

Complex constant_value_of(const CoefficientFn& c) {
  return c.is_exact() ? Complex(c.exact().constant_value().get_d()) : c.constant_value();
}

Json constant_json(const LinearSystem& sys) {
  Complex l = constant_value_of(sys.lambda0), s = constant_value_of(sys.s0), w = constant_value_of(sys.omega0),
          r = constant_value_of(sys.rho0);
  Json j;
  j["discriminant"] = complex_json((l - r) * (l - r) + 4.0 * w * s);
  try {
    ConstCoefSolution cs = solve_constant(l, s, w, r);
    j["alpha_plus"] = complex_json(cs.alpha_plus);
    j["alpha_minus"] = complex_json(cs.alpha_minus);
    j["rates"] = Json::array({complex_json(cs.exponents[0]), complex_json(cs.exponents[1])});
    j["repeated"] = cs.repeated;
  } catch (const DefectiveSystemError&) {
    j["defective"] = true;
  }
  if (sys.is_exact()) {
    auto text = constant_alpha_text(exact_constant(sys.lambda0), exact_constant(sys.s0), exact_constant(sys.omega0),
                                    exact_constant(sys.rho0));
    j["alpha_text"] = Json::array({text[0], text[1]});
  }
  return j;
}

void emit(const Json& j, Streams io) { io.out << dump_report(j); }

SolveOptions solve_options(const SpecFile& spec, const RunConfig& cfg) {
  SolveOptions so;
  so.anchor = cfg.anchor;
  so.n_max = cfg.n_max;
  so.path = cfg.path;
  so.C1 = cfg.C1;
  so.C2 = cfg.C2;
  so.user_alpha = user_alpha(spec, cfg);
  return so;
}

double residual_tol(const RunConfig& cfg) { return cfg.tol.value_or(1e-7); }
double deviation_tol(const RunConfig& cfg) { return cfg.tol.value_or(1e-6); }

Json report_json(const VerificationReport& r) {
  Json j;
  j["max_residual_phi1"] = r.max_residual_phi1;
  j["max_residual_phi2"] = r.max_residual_phi2;
  j["residual_tol"] = r.residual_tol;
  j["grid"] = r.grid;
  j["skipped"] = r.skipped;
  j["pass"] = r.pass;
  if (r.deviation_checked) {
    j["max_deviation"] = r.max_deviation;
    j["deviation_tol"] = r.deviation_tol;
  }
  return j;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) != nullptr) return "parse";
  if (dynamic_cast<const ResourceError*>(&e) != nullptr) return "resource";
  if (dynamic_cast<const PoleError*>(&e) != nullptr) return "pole";
  if (dynamic_cast<const ParameterError*>(&e) != nullptr) return "parameter";
  if (dynamic_cast<const DomainRestrictionError*>(&e) != nullptr) return "domain";
  if (dynamic_cast<const QuadratureError*>(&e) != nullptr) return "quadrature";
  return "error";
}

int fail_with(const std::string& command, const std::exception& e, Streams io) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["status"] = "error";
  Json err{{"type", error_type(e)}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = p->line();
    err["column"] = p->column();
  }
  j["error"] = err;
  emit(j, io);
  io.err << "error: " << e.what() << "\n";
  return exit_code_for(e);
}

template <typename F>
int guarded(const std::string& command, Streams io, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return fail_with(command, e, io);
  }
}

bool is_path_name(const std::string& s) {
  static const char* names[] = {"auto",     "corollary", "const-coef", "aim-alpha",
                                "aim-beta", "first-iteration",  "separable",  "user-alpha"};
  return std::any_of(std::begin(names), std::end(names), [&](const char* n) { return s == n; });
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ResourceError*>(&e) != nullptr) return kResourceGuard;
  if (dynamic_cast<const DomainRestrictionError*>(&e) != nullptr ||
      dynamic_cast<const DegenerateRatioError*>(&e) != nullptr ||
      dynamic_cast<const DefectiveSystemError*>(&e) != nullptr) {
    return kNoPath;
  }
  if (dynamic_cast<const QuadratureError*>(&e) != nullptr || dynamic_cast<const StepUnderflowError*>(&e) != nullptr) {
    return kVerifyFailed;
  }
  return kConfigError;
}

int cmd_analyze(const SpecFile& spec, const RunConfig& cfg, Streams io) {
  return guarded("analyze", io, [&] {
    LinearSystem sys = build_system(spec, cfg);
    Json j = header("analyze", spec, cfg);
    j["n_max"] = cfg.n_max;
    j["constant"] = nullptr;
    j["certificate"] = nullptr;
    if (sys.is_constant()) j["constant"] = constant_json(sys);
    int code = kOk;
    if (sys.is_exact()) {
      std::optional<TerminationCertificate> cert;
      bool degenerate = false;
      try {
        cert = find_termination(sys, cfg.n_max);
      } catch (const DegenerateRatioError&) {
        degenerate = true;
        cert = find_termination(sys, cfg.n_max, Branch::beta);
      }
      j["degenerate_alpha"] = degenerate;
      int depth = cert && cert->source == TerminationCertificate::Source::iteration ? cert->n + 1 : cfg.n_max + 1;
      AimState st = aim_iterate(sys, depth);
      Json iters = Json::array();
      std::optional<int> first_eta;
      for (int n = 0; n <= st.depth(); ++n) {
        const auto& lv = st.iterates[static_cast<std::size_t>(n)];
        Json it;
        it["n"] = n;
        it["degrees"] = Json{{"lambda", degrees(lv.lambda)},
                             {"s", degrees(lv.s)},
                             {"omega", degrees(lv.omega)},
                             {"rho", degrees(lv.rho)}};
        bool eta_zero = st.etas[static_cast<std::size_t>(n)].is_zero();
        it["eta_zero"] = eta_zero;
        if (eta_zero && !first_eta) first_eta = n;
        if (n >= 1) {
          it["delta_zero"] = st.deltas[static_cast<std::size_t>(n)].is_zero();
          it["Delta_zero"] = st.Deltas[static_cast<std::size_t>(n)].is_zero();
        }
        iters.push_back(it);
      }
      j["iterations"] = iters;
      j["polynomial_criterion"] = first_eta ? Json(*first_eta) : Json(nullptr);
      if (cert) {
        j["certificate"] = certificate_json(*cert);
        AlphaFunction a{CoefficientFn(cert->ratio), Provenance::aim, "", std::nullopt};
        const LinearSystem& rs = cert->kind == RatioKind::alpha ? sys : sys.swapped();
        j["riccati_exact_zero"] = riccati_residual(rs, a).exact().is_zero();
        j["status"] = "terminated";
        io.err << "certificate: " << to_string(cert->kind) << " at n=" << cert->n << " (" << to_string(cert->source)
               << "), ratio = " << cert->ratio.to_string() << "\n";
      } else if (sys.is_constant()) {
        j["status"] = "constant";
        io.err << "no rational ratio; constant system with alpha = "
               << j["constant"].value("alpha_text", Json::array({"", ""}))[0].get<std::string>() << "\n";
      } else {
        j["status"] = "no-termination";
        io.err << "no termination within n_max = " << cfg.n_max << "\n";
        code = kNoPath;
      }
    } else {
      SeparabilityClass cls = detect_separable(sys);
      j["separability"] = to_string(cls.kind);
      j["rank_one"] = rank_one_pattern(sys).has_value();
      SolveOptions so = solve_options(spec, cfg);
      auto solved = solve_system(sys, so);
      if (solved) {
        j["path"] = solved->path;
        j["alpha"] = solved->alpha_text;
        j["status"] = "solvable";
        io.err << "solution path: " << solved->path << "\n";
      } else {
        j["path"] = nullptr;
        j["status"] = "no-path";
        io.err << "no solution path applies\n";
        code = kNoPath;
      }
    }
    emit(j, io);
    return code;
  });
}

void write_csv(const SolutionEvaluator& sol, int points, std::ostream& out) {
  out << "x,re_phi1_1,im_phi1_1,re_phi2_1,im_phi2_1,re_phi1_2,im_phi1_2,re_phi2_2,im_phi2_2\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out << buf;
  };
  for (int i = 0; i < points; ++i) {
    double x = grid_point(sol.domain(), i, points);
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
    for (int k = 0; k < 2; ++k) {
      Pair p = sol.basis(k, x);
      put(p[0].real());
      put(p[0].imag());
      put(p[1].real());
      put(p[1].imag());
    }
    out << "\n";
  }
}

SolutionEvaluator read_csv(std::istream& in, Complex C1, Complex C2, std::optional<double> anchor) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty CSV");
  if (line.rfind("x,", 0) != 0) throw ParameterError("CSV header must start with 'x,'");
  auto xs = std::make_shared<std::vector<double>>();
  auto cols = std::make_shared<std::vector<std::array<double, 8>>>();
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::logic_error&) {
        throw ParameterError("bad number in CSV row " + std::to_string(row));
      }
    }
    if (v.size() != 9) throw ParameterError("CSV row " + std::to_string(row) + " needs 9 columns");
    if (!xs->empty() && v[0] <= xs->back()) throw ParameterError("CSV x column must increase");
    xs->push_back(v[0]);
    std::array<double, 8> c{};
    std::copy(v.begin() + 1, v.end(), c.begin());
    cols->push_back(c);
  }
  if (xs->size() < 6) throw ParameterError("CSV needs at least 6 rows");
  auto interp = [xs, cols](double x, int offset) {
    const auto& X = *xs;
    std::size_t hi = static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), x) - X.begin());
    std::size_t start = hi >= 3 ? hi - 3 : 0;
    start = std::min(start, X.size() - 6);
    Pair out{};
    for (std::size_t i = start; i < start + 6; ++i) {
      double w = 1.0;
      for (std::size_t k = start; k < start + 6; ++k) {
        if (k != i) w *= (x - X[k]) / (X[i] - X[k]);
      }
      const auto& c = (*cols)[i];
      out[0] += w * Complex(c[static_cast<std::size_t>(offset)], c[static_cast<std::size_t>(offset + 1)]);
      out[1] += w * Complex(c[static_cast<std::size_t>(offset + 2)], c[static_cast<std::size_t>(offset + 3)]);
    }
    return out;
  };
  Domain d{xs->front(), xs->back()};
  double x0 = anchor.value_or(d.midpoint());
  SolutionEvaluator sol([interp](double x) { return interp(x, 0); }, [interp](double x) { return interp(x, 4); }, C1,
                        C2, x0, d, SolutionBranch::alpha);
  sol.note = "tabulated";
  return sol;
}

int cmd_solve(const SpecFile& spec, const RunConfig& cfg, Streams io) {
  return guarded("solve", io, [&] {
    LinearSystem sys = build_system(spec, cfg);
    Json j = header("solve", spec, cfg);
    auto solved = solve_system(sys, solve_options(spec, cfg));
    if (!solved) {
      j["status"] = "no-path";
      j["path"] = nullptr;
      emit(j, io);
      io.err << "no solution path applies\n";
      return static_cast<int>(kNoPath);
    }
    const SolutionEvaluator& sol = solved->solution;
    j["status"] = "solved";
    j["path"] = solved->path;
    j["alpha"] = solved->alpha_text;
    j["anchor"] = sol.anchor();
    j["constants"] = Json{{"C1", complex_json(sol.C1())}, {"C2", complex_json(sol.C2())}};
    j["solution_domain"] = Json::array({sol.domain().lo, sol.domain().hi});
    j["certificate"] = solved->certificate ? certificate_json(*solved->certificate) : Json(nullptr);
    if (solved->constant) {
      const auto& cs = *solved->constant;
      j["rates"] = Json::array({complex_json(cs.exponents[0]), complex_json(cs.exponents[1])});
      j["alpha_value"] = complex_json(cs.alpha);
    }
    if (solved->separability) j["separability"] = to_string(solved->separability->kind);
    VerificationReport rep = residual_report(sys, sol, 33, residual_tol(cfg));
    j["residual"] = report_json(rep);
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out);
      if (!f) throw ParameterError("cannot write '" + cfg.out + "'");
      write_csv(sol, kCsvPoints, f);
      j["csv"] = Json{{"path", cfg.out}, {"points", kCsvPoints}};
    } else {
      j["csv"] = nullptr;
    }
    emit(j, io);
    io.err << "path " << solved->path << ", alpha = " << solved->alpha_text << "\n";
    io.err << "residual " << std::max(rep.max_residual_phi1, rep.max_residual_phi2)
           << (rep.pass ? " (pass)" : " (fail)")
           << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const SpecFile& spec, const RunConfig& cfg, const std::string& source, Streams io) {
  return guarded("verify", io, [&] {
    LinearSystem sys = build_system(spec, cfg);
    Json j = header("verify", spec, cfg);
    std::optional<SolutionEvaluator> sol;
    std::ifstream f(source);
    if (f) {
      sol = read_csv(f, cfg.C1, cfg.C2, cfg.anchor);
      j["source"] = Json{{"csv", source}};
    } else if (is_path_name(source)) {
      SolveOptions so = solve_options(spec, cfg);
      so.path = source;
      auto solved = solve_system(sys, so);
      if (!solved) {
        j["status"] = "no-path";
        emit(j, io);
        io.err << "no solution path applies\n";
        return static_cast<int>(kNoPath);
      }
      sol = solved->solution;
      j["source"] = Json{{"path", solved->path}};
    } else {
      throw ParameterError("solution source '" + source + "' is neither a readable file nor a path name");
    }
    const double dev_tol = deviation_tol(cfg);
    const double oracle_tol = std::clamp(dev_tol / 100.0, 1e-13, 1e-3);
    VerificationReport rep = full_report(sys, *sol, residual_tol(cfg), dev_tol, oracle_tol);
    j["report"] = report_json(rep);
    j["oracle_tol"] = oracle_tol;
    j["status"] = rep.pass ? "pass" : "fail";
    emit(j, io);
    io.err << rep.summary() << "\n";
    return rep.pass ? static_cast<int>(kOk) : static_cast<int>(kVerifyFailed);
  });
}

int cmd_tables(const std::string& selector, bool catalog, bool oracle, Streams io) {
  return guarded("tables", io, [&] {
    auto selection = parse_table_selector(selector);
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = "tables";
    j["selector"] = selector;
    if (catalog) {
      Json entries = Json::array();
      for (const auto& e : family_catalog()) {
        bool keep = std::any_of(selection.begin(), selection.end(), [&](const auto& s) {
          return s.first == e.table &&
                 (s.second.empty() || std::find(s.second.begin(), s.second.end(), e.row) != s.second.end());
        });
        if (!keep) continue;
        entries.push_back(Json{{"id", e.id},
                               {"table", e.table},
                               {"row", e.row},
                               {"parameters", e.parameters},
                               {"constraints", e.constraints},
                               {"description", e.description}});
      }
      j["catalog"] = entries;
      emit(j, io);
      return static_cast<int>(kOk);
    }
    Json rows = Json::array();
    int total = 0, passed = 0;
    CheckOptions opt;
    opt.oracle = oracle;
    for (const auto& [table, which] : selection) {
      for (const auto& inst : shipped_instances(table, which)) {
        FamilyCheck c = check_family(inst, opt);
        ++total;
        if (c.pass) ++passed;
        Json checks = Json::object();
        for (const auto& [name, ok] : c.checks) checks[name] = ok;
        Json r{{"id", c.id},
               {"pass", c.pass},
               {"checks", checks},
               {"max_residual", c.max_residual},
               {"notes", c.notes}};
        if (inst.oracle && oracle) r["max_deviation"] = c.max_deviation;
        if (c.riccati_residual > 0) r["riccati_residual"] = c.riccati_residual;
        rows.push_back(r);
        io.err << (c.pass ? "PASS " : "FAIL ") << c.id;
        for (const auto& [name, ok] : c.checks) {
          if (!ok) io.err << " [" << name << "]";
        }
        for (const auto& n : c.notes) io.err << " {" << n << "}";
        io.err << "\n";
      }
    }
    j["rows"] = rows;
    j["summary"] = Json{{"total", total}, {"passed", passed}};
    emit(j, io);
    io.err << passed << "/" << total << " rows pass\n";
    return passed == total ? static_cast<int>(kOk) : static_cast<int>(kVerifyFailed);
  });
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Closed-form solutions and verification for 2x2 linear ODE systems", "aimlinsys"};
  app.require_subcommand(1);

  std::string spec_path, source, selector = "all";
  CliOverrides ov;
  bool catalog = false, no_oracle = false;

  auto common = [&](CLI::App* sc) {
    sc->add_option("spec", spec_path, "System specification file")->required();
    sc->add_option_function<std::string>("--mode", [&](const std::string& v) { ov.mode = v; }, "exact or numeric");
    sc->add_option_function<std::string>("--domain", [&](const std::string& v) { ov.domain = v; }, "LO:HI");
    sc->add_option_function<double>("--anchor", [&](const double& v) { ov.anchor = v; }, "Anchor x0");
    sc->add_option_function<int>("--nmax", [&](const int& v) { ov.n_max = v; }, "Iteration limit");
    sc->add_option_function<double>("--tol", [&](const double& v) { ov.tol = v; }, "Verification tolerance");
    sc->add_option_function<std::string>("--out", [&](const std::string& v) { ov.out = v; }, "CSV output path");
    sc->add_option_function<std::string>("--params", [&](const std::string& v) { ov.params = v; }, "k=v,...");
    sc->add_option_function<std::string>("--path", [&](const std::string& v) { ov.path = v; }, "Force a solution path");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "Run the iteration and report termination");
  common(analyze);
  CLI::App* solve = app.add_subcommand("solve", "Build a closed-form solution");
  common(solve);
  CLI::App* verify = app.add_subcommand("verify", "Check a solution against the residual and the oracle");
  common(verify);
  verify->add_option("--solution", source, "CSV from solve or a path name")->required();
  CLI::App* tables = app.add_subcommand("tables", "Run the family regression suite");
  tables->add_option("selector", selector, "e.g. I, III:1-4, VI:1, all");
  tables->add_flag("--catalog", catalog, "Print the family catalog");
  tables->add_flag("--no-oracle", no_oracle, "Skip the oracle comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? 0 : static_cast<int>(kConfigError);
  }

  if (tables->parsed()) return cmd_tables(selector, catalog, !no_oracle, io);
  std::string command = analyze->parsed() ? "analyze" : solve->parsed() ? "solve" : "verify";
  SpecFile spec;
  RunConfig cfg;
  try {
    spec = load_spec_file(spec_path);
    cfg = resolve_config(spec, ov);
  } catch (const std::exception& e) {
    return fail_with(command, e, io);
  }
  if (analyze->parsed()) return cmd_analyze(spec, cfg, io);
  if (solve->parsed()) return cmd_solve(spec, cfg, io);
  return cmd_verify(spec, cfg, source, io);
}

}  // namespace aimlinsys::cli
