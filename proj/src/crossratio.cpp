#include "basm/crossratio.hpp"

#include <algorithm>
#include <cmath>

#include "basm/errors.hpp"
#include "extended.hpp"

namespace basm {

Complex fgw_cross_ratio(const ProjHyperplane& phi, const ProjHyperplane& phi_prime, const ProjLine& omega,
                        const ProjLine& omega_prime, double threshold) {
  const Complex d1 = pair(phi, omega_prime);
  const Complex d2 = pair(phi_prime, omega);
  if (std::abs(d1) < threshold || std::abs(d2) < threshold)
    throw TransversalityFailure("cross ratio denominator vanishes: a line lies in a hyperplane");
  return pair(phi, omega) * pair(phi_prime, omega_prime) / (d1 * d2);
}

Complex log1p(Complex z) {
  const double x = z.real(), y = z.imag();
  return {0.5 * std::log1p(2 * x + x * x + y * y), std::atan2(y, 1 + x)};
}

TermEvaluator::TermEvaluator(std::vector<FlagData> boundary_flags, double transversality_tol)
    : flags_(std::move(boundary_flags)), tol_(transversality_tol) {
  for (const FlagData& f : flags_) {
    hyperplane_wedges_.push_back(wedge(f.plus_hyperplane.covector(), f.minus_hyperplane.covector()));
    line_wedges_.push_back(wedge(f.plus_line.rep(), f.minus_line.rep()));
  }
}

namespace {

std::vector<FlagData> boundary_flags(const Representation& rep, const BoundaryConfig& bc, double tol) {
  std::vector<FlagData> out;
  for (const Word& a : bc.words()) out.push_back(fixed_flags(rep, a, tol));
  return out;
}

}  // namespace

TermEvaluator::TermEvaluator(const Representation& rep, const BoundaryConfig& bc, double spectral_tol,
                             double transversality_tol)
    : TermEvaluator(boundary_flags(rep, bc, spectral_tol), transversality_tol) {}

TermSample TermEvaluator::evaluate(std::size_t j, std::size_t q, const CMatrix& m, const CMatrix* compound) const {
  const FlagData& fj = flags_[j];
  const FlagData& fq = flags_[q];
  const CVector omega = m.apply(fq.plus_line.rep());
  const CVector omega_prime = m.apply(fq.minus_line.rep());
  const double n1 = norm(omega), n2 = norm(omega_prime);
  const auto& phi = fj.plus_hyperplane.covector();
  const auto& phi_prime = fj.minus_hyperplane.covector();

  const Complex num1 = contract(phi, omega);
  const Complex num2 = contract(phi_prime, omega_prime);
  const Complex den1 = contract(phi, omega_prime);
  const Complex den2 = contract(phi_prime, omega);
  const double p_den = std::min(std::abs(den1) / n2, std::abs(den2) / n1);
  if (!(p_den >= tol_))
    throw TransversalityFailure("cross ratio denominator vanishes (normalized pairing " + std::to_string(p_den) + ")");

  const CVector lines = compound ? compound->apply(line_wedges_[q]) : wedge(omega, omega_prime);
  const Complex delta = wedge_pair(hyperplane_wedges_[j], lines) / (den1 * den2);

  TermSample s;
  s.cross_ratio = std::abs(delta) < 0.5 ? 1.0 + delta : num1 * num2 / (den1 * den2);
  if (s.cross_ratio == 0.0) throw TransversalityFailure("cross ratio vanishes");
  s.value = std::abs(delta) < 0.5 ? log1p(delta) : std::log(s.cross_ratio);
  s.min_pairing = std::min({p_den, std::abs(num1) / n1, std::abs(num2) / n2});
  s.distance = std::min(1.0, norm(lines) / (n1 * n2));
  return s;
}

Complex identity_term(const Representation& rep, const BoundaryConfig& bc, const TermKey& key,
                      double spectral_tol, double transversality_tol) {
  if (key.j >= bc.size() || key.q >= bc.size()) throw ConfigError("boundary index out of range");
  std::vector<FlagData> flags;
  flags.push_back(fixed_flags(rep, bc[key.j], spectral_tol));
  flags.push_back(fixed_flags(rep, bc[key.q], spectral_tol));
  const TermEvaluator ev(std::move(flags), transversality_tol);
  const CMatrix m = rep.evaluate(key.w);
  const CMatrix c = rep.compound_product(key.w.letters());
  return ev.evaluate(0, 1, m, &c).value;
}

namespace {

// Inverse letters are inverted here from the forward images; the stored double
// inverses are off by eps, which the repelling hyperplane amplifies by |lambda_1 / lambda_n|.
ext::XMatrix extended_image(const Representation& rep, Letter l) {
  const int n = rep.n();
  const CMatrix& g = rep.image(Letter(l.generator(), 1));
  ext::XMatrix x(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = g(i, j);
  if (l.sign() > 0) return x;
  ext::XMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = 1;
  } else if (n == 2) {
    adj(0, 0) = x(1, 1);
    adj(0, 1) = -x(0, 1);
    adj(1, 0) = -x(1, 0);
    adj(1, 1) = x(0, 0);
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        adj(i, j) = x(r0, c0) * x(r1, c1) - x(r0, c1) * x(r1, c0);
      }
  }
  ext::XComplex det = 0;
  for (int k = 0; k < n; ++k) det += x(0, k) * adj(k, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj(i, j) /= det;
  return adj;
}

ext::XMatrix extended_product(const Representation& rep, const Word& w) {
  ext::XMatrix out = ext::XMatrix::identity(rep.n());
  for (Letter l : w.letters()) out = out * extended_image(rep, l);
  return out;
}

}  // namespace

Complex complex_period(const Representation& rep, const Word& gamma, const ProjLine& x, double spectral_tol,
                       double transversality_tol) {
  const FlagData f = fixed_flags(rep, gamma, spectral_tol);
  if (grassmann_distance(x, f.plus_line) < 1e-9 || grassmann_distance(x, f.minus_line) < 1e-9)
    throw TransversalityFailure("the base line is fixed by the element");
  if (rep.n() > 3) {
    const ProjLine gx = apply(rep.evaluate(gamma), x);
    return std::log(fgw_cross_ratio(f.plus_hyperplane, f.minus_hyperplane, x, gx, transversality_tol));
  }
  // The pairing of the plus hyperplane with rho(gamma) x is ~|lambda_n / lambda_1|
  // of the product's scale, so double rounding costs eps |lambda_1 / lambda_n|.
  const ext::XVector xx(x.rep().begin(), x.rep().end());
  const ext::XMatrix m = extended_product(rep, gamma), m_inv = extended_product(rep, gamma.inverse());
  const ext::XVector phi =
      ext::normalized(ext::left_eigenvector(m_inv, ext::polish_eigenvalue(m_inv, 1.0 / f.lambda_n)));
  const ext::XVector phi_prime = ext::normalized(ext::left_eigenvector(m, ext::polish_eigenvalue(m, f.lambda_1)));
  const ext::XVector gx = ext::normalized(m.apply(xx));
  const ext::XComplex d1 = ext::contract(phi, gx), d2 = ext::contract(phi_prime, xx);
  if (std::abs(d1) < transversality_tol || std::abs(d2) < transversality_tol)
    throw TransversalityFailure("cross ratio denominator vanishes: a line lies in a hyperplane");
  const ext::XComplex r = ext::contract(phi, xx) * ext::contract(phi_prime, gx) / (d1 * d2);
  return Complex(std::log(r));
}

}  // namespace basm
