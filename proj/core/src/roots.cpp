#include "aimlinsys/roots.hpp"

#include <algorithm>
#include <cmath>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

namespace {

int sign_of(const Rational& q) { return sgn(q); }

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sign_of(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Polynomial square_free(const Polynomial& p) {
  Polynomial g = gcd(p, p.derivative());
  return g.is_constant() ? p : exact_quotient(p, g);
}

}  // namespace

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  Polynomial a = square_free(p).monic();
  Polynomial b = a.derivative();
  chain.push_back(a);
  while (!b.is_zero()) {
    Rational lead = b.leading();
    b *= Rational(1) / abs(lead);
    chain.push_back(b);
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = -r;
  }
  return chain;
}

int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw ParameterError("zero polynomial has infinitely many roots");
  if (p.is_constant() || lo > hi) return 0;
  auto chain = sturm_sequence(p);
  int n = sign_changes(chain, lo) - sign_changes(chain, hi);
  if (chain.front().eval(lo) == 0) ++n;
  return n;
}

int count_real_roots(const Polynomial& p, double lo, double hi) {
  return count_real_roots(p, rational_from_double(lo), rational_from_double(hi));
}

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol) {
  std::vector<double> out;
  if (p.is_zero()) throw ParameterError("zero polynomial has infinitely many roots");
  if (p.is_constant()) return out;
  auto chain = sturm_sequence(p);
  const Polynomial& sf = chain.front();
  Rational a0 = rational_from_double(lo);
  if (sf.eval(a0) == 0) out.push_back(lo);
  Rational wtol = rational_from_double(tol);
  // Half-open cells (a, b]; V(a) - V(b) counts the roots inside.
  std::vector<std::pair<Rational, Rational>> work{{a0, rational_from_double(hi)}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = sign_changes(chain, a) - sign_changes(chain, b);
    if (n == 0) continue;
    if (b - a <= wtol) {
      out.push_back(sf.eval(b) == 0 ? b.get_d() : Rational((a + b) / 2).get_d());
      continue;
    }
    Rational mid = (a + b) / 2;
    work.emplace_back(mid, b);
    work.emplace_back(a, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> first_pole(const RationalFunction& f, const Domain& d) {
  auto roots = real_roots(f.den(), d.lo, d.hi);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

Domain widest_root_free_gap(const std::vector<Polynomial>& polys, const Domain& d, double margin) {
  std::vector<double> cuts;
  for (const auto& p : polys) {
    if (p.is_zero()) throw DomainRestrictionError("polynomial vanishes identically", d.lo);
    auto r = real_roots(p, d.lo, d.hi);
    cuts.insert(cuts.end(), r.begin(), r.end());
  }
  if (cuts.empty()) return d;
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, bool>> edges;
  edges.emplace_back(d.lo, false);
  for (double c : cuts) edges.emplace_back(c, true);
  edges.emplace_back(d.hi, false);
  std::sort(edges.begin(), edges.end());
  double best = -1;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double w = edges[i + 1].first - edges[i].first;
    if (w > best) {
      best = w;
      at = i;
    }
  }
  if (best <= 0) throw DomainRestrictionError("no root-free sub-interval", cuts.front());
  double pad = margin * best;
  double lo = edges[at].first, hi = edges[at + 1].first;
  bool lo_is_root = edges[at].second || (at > 0 && edges[at - 1].first == lo);
  bool hi_is_root = edges[at + 1].second || (at + 2 < edges.size() && edges[at + 2].first == hi);
  return {lo + (lo_is_root ? pad : 0.0), hi - (hi_is_root ? pad : 0.0)};
}

}  // namespace aimlinsys
