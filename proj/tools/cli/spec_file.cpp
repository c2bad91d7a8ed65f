#include "spec_file.hpp"

#include <fstream>
#include <sstream>

namespace aimlinsys::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ExprPtr parse_at(const SpecEntry& e) {
  try {
    return parse_expression(e.value, e.line);
  } catch (const ParseError& err) {
    std::string what = err.what();
    what = what.substr(0, what.rfind(" at line "));
    throw ParseError(what, err.line(), err.column() + e.column - 1);
  }
}

template <typename F>
auto rethrow_at(const SpecEntry& e, F&& f) {
  try {
    return f();
  } catch (const ParseError& err) {
    std::string what = err.what();
    what = what.substr(0, what.rfind(" at line "));
    if (err.line() == e.line) throw ParseError(what, e.line, err.column() + e.column - 1);
    throw ParseError(what, e.line, e.column);
  } catch (const Error& err) {
    throw ParseError(err.what(), e.line, e.column);
  }
}

Complex parse_complex_constant(const SpecEntry& e) {
  ExprPtr x = parse_at(e);
  return evaluate(x, 0.0);
}

}  // namespace

SpecFile parse_spec_file(const std::string& text) {
  SpecFile out;
  std::map<std::string, SpecEntry>* section = nullptr;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    std::string t = trim(body);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("unterminated section header", line, static_cast<int>(body.size()));
      std::string name = trim(t.substr(1, t.size() - 2));
      if (name == "system") {
        section = &out.system;
        out.system_line = line;
      } else if (name == "params") {
        section = &out.params;
      } else if (name == "run") {
        section = &out.run;
      } else {
        throw ParseError("unknown section [" + name + "]", line, static_cast<int>(body.find('[')) + 1);
      }
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line, static_cast<int>(body.find_first_not_of(" \t")) + 1);
    }
    if (section == nullptr) throw ParseError("entry outside a section", line, 1);
    std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ParseError("missing key", line, static_cast<int>(eq) + 1);
    std::string rest = body.substr(eq + 1);
    auto first = rest.find_first_not_of(" \t");
    std::string value = trim(rest);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line, static_cast<int>(eq) + 2);
    if (section->count(key) != 0) throw ParseError("duplicate key '" + key + "'", line, 1);
    (*section)[key] = {value, line, static_cast<int>(eq + 1 + first) + 1};
  }
  return out;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot read spec file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec_file(ss.str());
}

Rational parse_constant(const std::string& text, int line, int column) {
  ExprPtr e = parse_expression(text, line);
  RationalFunction f = to_rational_function(e);
  if (!f.is_constant()) throw ParseError("expected a constant", line, column);
  return f.constant_value();
}

Domain parse_domain(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("domain must be LO:HI");
  try {
    double lo = std::stod(text.substr(0, colon));
    double hi = std::stod(text.substr(colon + 1));
    if (!(lo < hi)) throw ParameterError("domain needs LO < HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParameterError("domain must be LO:HI, got '" + text + "'");
  }
}

Params parse_params(const std::string& text) {
  Params out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("parameter binding must be k=v, got '" + item + "'");
    std::string k = trim(item.substr(0, eq));
    if (k.empty()) throw ParameterError("empty parameter name");
    out[k] = parse_constant(trim(item.substr(eq + 1)));
  }
  return out;
}

RunConfig resolve_config(const SpecFile& spec, const CliOverrides& cli) {
  RunConfig c;
  for (const auto& [k, e] : spec.params) {
    c.params[k] = rethrow_at(e, [&] { return parse_constant(e.value, e.line); });
  }
  static const char* known[] = {"mode", "domain", "anchor", "nmax", "tol", "path", "c1", "c2", "alpha", "out"};
  for (const auto& [k, e] : spec.run) {
    bool ok = false;
    for (const char* n : known) ok = ok || k == n;
    if (!ok) throw ParseError("unknown [run] key '" + k + "'", e.line, 1);
  }
  auto run = [&](const char* key) -> const SpecEntry* {
    auto it = spec.run.find(key);
    return it == spec.run.end() ? nullptr : &it->second;
  };
  std::string mode = "exact";
  if (const auto* e = run("mode")) mode = e->value;
  if (cli.mode) mode = *cli.mode;
  if (mode == "exact") {
    c.mode = EvalMode::exact;
  } else if (mode == "numeric") {
    c.mode = EvalMode::numeric;
  } else {
    throw ParameterError("mode must be exact or numeric, got '" + mode + "'");
  }
  if (const auto* e = run("domain")) c.domain = rethrow_at(*e, [&] { return parse_domain(e->value); });
  if (cli.domain) c.domain = parse_domain(*cli.domain);
  if (const auto* e = run("anchor")) c.anchor = rethrow_at(*e, [&] { return parse_constant(e->value).get_d(); });
  if (cli.anchor) c.anchor = *cli.anchor;
  if (c.anchor && (*c.anchor < c.domain.lo || *c.anchor > c.domain.hi)) {
    throw ParameterError("anchor x0 lies outside the domain");
  }
  if (const auto* e = run("nmax")) {
    c.n_max = rethrow_at(*e, [&] {
      Rational q = parse_constant(e->value);
      if (!is_integer(q)) throw ParameterError("nmax must be an integer");
      return static_cast<int>(q.get_num().get_si());
    });
  }
  if (cli.n_max) c.n_max = *cli.n_max;
  if (c.n_max < 0 || c.n_max > 200) throw ParameterError("nmax must lie in 0..200");
  if (const auto* e = run("tol")) c.tol = rethrow_at(*e, [&] { return parse_constant(e->value).get_d(); });
  if (cli.tol) c.tol = *cli.tol;
  if (c.tol && !(*c.tol >= 1e-13 && *c.tol <= 1e-1)) throw ParameterError("tol must lie in [1e-13, 1e-1]");
  if (const auto* e = run("path")) c.path = e->value;
  if (cli.path) c.path = *cli.path;
  if (const auto* e = run("out")) c.out = e->value;
  if (cli.out) c.out = *cli.out;
  if (cli.params) {
    for (const auto& [k, v] : parse_params(*cli.params)) c.params[k] = v;
  }
  if (const auto* e = run("c1")) c.C1 = rethrow_at(*e, [&] { return parse_complex_constant(*e); });
  if (const auto* e = run("c2")) c.C2 = rethrow_at(*e, [&] { return parse_complex_constant(*e); });
  return c;
}

LinearSystem build_system(const SpecFile& spec, const RunConfig& config) {
  static const char* keys[] = {"lambda0", "s0", "omega0", "rho0"};
  for (const auto& [k, e] : spec.system) {
    bool ok = false;
    for (const char* n : keys) ok = ok || k == n;
    if (!ok) throw ParseError("unknown [system] key '" + k + "'", e.line, 1);
  }
  CoefficientFn c[4];
  for (int i = 0; i < 4; ++i) {
    auto it = spec.system.find(keys[i]);
    if (it == spec.system.end()) {
      throw ParseError(std::string("missing coefficient '") + keys[i] + "'", std::max(spec.system_line, 1), 1);
    }
    const SpecEntry& e = it->second;
    ExprPtr x = parse_at(e);
    c[i] = rethrow_at(e, [&] { return to_coefficient(x, config.params, config.mode); });
  }
  LinearSystem sys{c[0], c[1], c[2], c[3], config.domain};
  sys.validate();
  return sys;
}

std::optional<CoefficientFn> user_alpha(const SpecFile& spec, const RunConfig& config) {
  auto it = spec.run.find("alpha");
  if (it == spec.run.end()) return std::nullopt;
  const SpecEntry& e = it->second;
  ExprPtr x = parse_at(e);
  EvalMode mode = has_function_call(x) ? EvalMode::numeric : config.mode;
  return rethrow_at(e, [&] { return to_coefficient(x, config.params, mode); });
}

}  // namespace aimlinsys::cli
