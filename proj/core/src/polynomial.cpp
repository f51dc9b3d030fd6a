#include "bundlex/polynomial.hpp"

#include <numeric>
#include <sstream>

#include "bundlex/errors.hpp"

namespace bundlex::aut {

Polynomial Polynomial::constant(int nvars, Cx c) {
  Polynomial p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0u), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw DimensionMismatch("polynomial variable index out of range");
  Exponents e(static_cast<std::size_t>(nvars), 0u);
  e[static_cast<std::size_t>(index)] = 1u;
  return monomial(nvars, e, Cx(1.0, 0.0));
}

Polynomial Polynomial::monomial(int nvars, Exponents exps, Cx c) {
  if (static_cast<int>(exps.size()) != nvars)
    throw DimensionMismatch("exponent tuple length does not match variable count");
  Polynomial p(nvars);
  p.add_term(exps, c);
  return p;
}

void Polynomial::add_term(const Exponents& exps, Cx c) {
  if (static_cast<int>(exps.size()) != nvars_)
    throw DimensionMismatch("exponent tuple length does not match variable count");
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    if (c != Cx(0.0, 0.0)) terms_.emplace(exps, c);
    return;
  }
  it->second += c;
  if (it->second == Cx(0.0, 0.0)) terms_.erase(it);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

bool Polynomial::involves(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<std::size_t>(var)] > 0) return true;
  return false;
}

namespace {

// Horner over variable `var` on a term range sharing exponents[0..var).
Cx eval_horner(const Polynomial::TermMap& terms,
               Polynomial::TermMap::const_iterator lo,
               Polynomial::TermMap::const_iterator hi, std::size_t var,
               std::size_t nvars, std::span<const Cx> point) {
  if (lo == hi) return Cx(0.0, 0.0);
  if (var == nvars) return lo->second;  // fully specified exponent tuple
  // Terms are in lexicographic order, so equal exponents of `var` are
  // contiguous; gather coefficients by descending exponent.
  std::vector<std::pair<unsigned, Cx>> coeffs;
  auto it = lo;
  while (it != hi) {
    unsigned e = it->first[var];
    auto run_end = it;
    while (run_end != hi && run_end->first[var] == e) ++run_end;
    coeffs.emplace_back(e, eval_horner(terms, it, run_end, var + 1, nvars, point));
    it = run_end;
  }
  Cx acc(0.0, 0.0);
  unsigned prev = coeffs.back().first;  // largest exponent comes last in lex order
  acc = coeffs.back().second;
  for (auto rit = coeffs.rbegin() + 1; rit != coeffs.rend(); ++rit) {
    for (unsigned k = rit->first; k < prev; ++k) acc *= point[var];
    acc += rit->second;
    prev = rit->first;
  }
  for (unsigned k = 0; k < prev; ++k) acc *= point[var];
  return acc;
}

}  // namespace

Cx Polynomial::eval(std::span<const Cx> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw DimensionMismatch("evaluation point dimension does not match polynomial");
  return eval_horner(terms_, terms_.begin(), terms_.end(), 0,
                     static_cast<std::size_t>(nvars_), point);
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(Cx(-1.0, 0.0)); }

Polynomial Polynomial::scaled(Cx s) const {
  Polynomial out(nvars_);
  if (s == Cx(0.0, 0.0)) return out;
  for (const auto& [e, c] : terms_) out.add_term(e, s * c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  Polynomial out(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) {
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const {
  if (static_cast<int>(subs.size()) != nvars_)
    throw DimensionMismatch("substitution list length does not match variable count");
  const int out_vars = subs.empty() ? 0 : subs[0].nvars();
  for (const Polynomial& s : subs)
    if (s.nvars() != out_vars)
      throw DimensionMismatch("substitution polynomials have mixed variable counts");
  Polynomial out(out_vars);
  // Cache powers of each substituted polynomial up to its needed exponent.
  std::vector<std::vector<Polynomial>> powers(subs.size());
  for (std::size_t v = 0; v < subs.size(); ++v)
    powers[v].push_back(Polynomial::constant(out_vars, Cx(1.0, 0.0)));
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    while (powers[v].size() <= e) powers[v].push_back(powers[v].back() * subs[v]);
    return powers[v][e];
  };
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(out_vars, c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] > 0) term = term * power(v, e[v]);
    out = out + term;
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] > 0) {
        os << "*z" << (v + 1);
        if (e[v] > 1) os << "^" << e[v];
      }
  }
  return os.str();
}

}  // namespace bundlex::aut
