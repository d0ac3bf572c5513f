#include "xqm/quasi_werner.hpp"

#include <cmath>

#include "xqm/metrology.hpp"
#include "xqm/oracle.hpp"

namespace xqm {

namespace {

constexpr double kDenomTol = 1e-12;

void guard_denominator(double value, const char* where) {
  if (std::abs(value) < kDenomTol)
    throw SingularBlock(std::string("closed form denominator vanishes: ") + where);
}

double n_squared(const NormalizationPack& n, Sign sign) {
  const double v = (sign == Sign::plus) ? n.n_plus : n.n_minus;
  return v * v;
}

// Product N+a N-a N+b N-b of the unsquared basis normalizations.
double basis_norm_product(const NormalizationPack& n) {
  return n.n_plus_a * n.n_minus_a * n.n_plus_b * n.n_minus_b;
}

// Product of all four squared normalizations.
double basis_norm_product_sq(const NormalizationPack& n) {
  const double w = basis_norm_product(n);
  return w * w;
}

}  // namespace

const char* sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

NormalizationPack normalizations(const QuasiWernerParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw OutOfDomain("coherent amplitudes must be positive");
  if (!(p.q >= 0.0 && p.q <= 1.0)) throw OutOfDomain("mixing parameter outside [0,1]");
  NormalizationPack n;
  n.chi_a = std::exp(-p.alpha * p.alpha);
  n.chi_b = std::exp(-p.beta * p.beta);
  const double cc = n.chi_a * n.chi_a * n.chi_b * n.chi_b;
  n.n_plus = 1.0 / std::sqrt(2.0 * (1.0 + cc));
  n.n_minus = 1.0 / std::sqrt(2.0 * (1.0 - cc));
  n.n_plus_a = 1.0 / std::sqrt(2.0 * (1.0 + n.chi_a * n.chi_a));
  n.n_minus_a = 1.0 / std::sqrt(2.0 * (1.0 - n.chi_a * n.chi_a));
  n.n_plus_b = 1.0 / std::sqrt(2.0 * (1.0 + n.chi_b * n.chi_b));
  n.n_minus_b = 1.0 / std::sqrt(2.0 * (1.0 - n.chi_b * n.chi_b));
  return n;
}

XState density_matrix(const QuasiWernerParams& p) {
  const NormalizationPack n = normalizations(p);
  const double q = p.q;
  XState s;
  if (p.sign == Sign::plus) {
    const double n2 = n.n_plus * n.n_plus;
    const double w_pp = n2 / (n.n_plus_a * n.n_plus_a * n.n_plus_b * n.n_plus_b);
    const double w_mm = n2 / (n.n_minus_a * n.n_minus_a * n.n_minus_b * n.n_minus_b);
    const double coh = q * n2 / basis_norm_product(n);
    s.d1 = 0.25 * (1.0 + q * (w_pp - 1.0));
    s.d2 = 0.25 * (1.0 - q);
    s.d3 = 0.25 * (1.0 - q);
    s.d4 = 0.25 * (1.0 + q * (w_mm - 1.0));
    s.a14 = 0.25 * coh;
    s.a23 = 0.0;
  } else {
    const double n2 = n.n_minus * n.n_minus;
    const double w_pm = n2 / (n.n_plus_a * n.n_plus_a * n.n_minus_b * n.n_minus_b);
    const double w_mp = n2 / (n.n_minus_a * n.n_minus_a * n.n_plus_b * n.n_plus_b);
    const double coh = q * n2 / basis_norm_product(n);
    s.d1 = 0.25 * (1.0 - q);
    s.d2 = 0.25 * (1.0 + q * (w_pm - 1.0));
    s.d3 = 0.25 * (1.0 + q * (w_mp - 1.0));
    s.d4 = 0.25 * (1.0 - q);
    s.a14 = 0.0;
    s.a23 = 0.25 * coh;
  }
  return validated(s);
}

double coherence_weight(const NormalizationPack& n, Sign sign) {
  return n_squared(n, sign) / (2.0 * basis_norm_product(n));
}

double population_asymmetry(const NormalizationPack& n, Sign sign) {
  const double pa2 = n.n_plus_a * n.n_plus_a;
  const double ma2 = n.n_minus_a * n.n_minus_a;
  const double pb2 = n.n_plus_b * n.n_plus_b;
  const double mb2 = n.n_minus_b * n.n_minus_b;
  const double denom = 4.0 * pa2 * ma2 * pb2 * mb2;
  if (sign == Sign::plus) return n_squared(n, sign) * (ma2 * mb2 - pa2 * pb2) / denom;
  return n_squared(n, sign) * (ma2 * pb2 - pa2 * mb2) / denom;
}

BlockCoeffs closed_block_coeffs(const QuasiWernerParams& p) {
  const NormalizationPack n = normalizations(p);
  const double q = p.q;
  BlockCoeffs c{};
  if (p.sign == Sign::plus) {
    c.chi = {0.5 * (1.0 + q), q * coherence_weight(n, Sign::plus), 0.0,
             q * population_asymmetry(n, Sign::plus)};
    c.chi_tilde = {0.5 * (1.0 - q), 0.0, 0.0, 0.0};
  } else {
    c.chi = {0.5 * (1.0 - q), 0.0, 0.0, 0.0};
    c.chi_tilde = {0.5 * (1.0 + q), q * coherence_weight(n, Sign::minus), 0.0,
                   q * population_asymmetry(n, Sign::minus)};
  }
  return c;
}

BlockCoeffsDeriv closed_block_coeffs_dq(const QuasiWernerParams& p) {
  const NormalizationPack n = normalizations(p);
  BlockCoeffsDeriv d{};
  if (p.sign == Sign::plus) {
    d.dchi = {0.5, coherence_weight(n, Sign::plus), 0.0, population_asymmetry(n, Sign::plus)};
    d.dchi_tilde = {-0.5, 0.0, 0.0, 0.0};
  } else {
    d.dchi = {-0.5, 0.0, 0.0, 0.0};
    d.dchi_tilde = {0.5, coherence_weight(n, Sign::minus), 0.0,
                    population_asymmetry(n, Sign::minus)};
  }
  return d;
}

ParametrizedFamily mixing_family(double alpha, double beta, Sign sign) {
  const XState pure = density_matrix(QuasiWernerParams{alpha, beta, 1.0, sign});
  return linear_family(maximally_mixed(), pure);
}

ParametrizedFamily mixing_family_evolved(double alpha, double beta, Sign sign,
                                         const Channel& ch) {
  return channel_evolved_family(mixing_family(alpha, beta, sign), ch);
}

double concurrence_closed(const QuasiWernerParams& p) {
  const NormalizationPack n = normalizations(p);
  const double w = basis_norm_product(n);
  const double c = (p.q * n_squared(n, p.sign) - (1.0 - p.q) * w) / (2.0 * w);
  return std::max(0.0, c);
}

// ---- phase damping ------------------------------------------------------

namespace {

double pdc_gamma(const NormalizationPack& n, Sign sign, double s) {
  const double n2 = n_squared(n, sign);
  const double kap = population_asymmetry(n, sign);
  const double s2 = s * s;
  return 1.0 - s2 * s2 * n2 * n2 / basis_norm_product_sq(n) - 4.0 * kap * kap;
}

double pdc_qfi(const NormalizationPack& n, Sign sign, double q, double s) {
  const double g = pdc_gamma(n, sign, s);
  const double denom = 2.0 * (1.0 - q) * (1.0 + 2.0 * q + q * q * g);
  guard_denominator(denom, "phase-damping Fisher form");
  return (3.0 + (2.0 * q - 1.0) * g) / denom;
}

double pdc_skew_a(double q, double g) {
  const double root = 1.0 + 2.0 * q + q * q * g;
  guard_denominator(root, "phase-damping skew coefficient");
  return std::sqrt(2.0) * std::pow(1.0 + q + std::sqrt(root), -0.5) * std::pow(root, -0.5);
}

double pdc_skew_b(double q, double g) {
  const double root = 1.0 + 2.0 * q + q * q * g;
  guard_denominator(root, "phase-damping skew coefficient");
  return std::sqrt(2.0) * std::pow(1.0 + q + std::sqrt(root), -0.5);
}

double pdc_skew_c(double q, double g) {
  const double root = 1.0 + 2.0 * q + q * q * g;
  guard_denominator(root, "phase-damping skew coefficient");
  return 2.0 * std::sqrt(2.0) * std::pow(1.0 + q + std::sqrt(root), -1.5) * std::pow(root, -0.5);
}

double pdc_skew(const NormalizationPack& n, Sign sign, double q, double s) {
  guard_denominator(1.0 - q, "phase-damping skew form");
  const double g = pdc_gamma(n, sign, s);
  const double n4 = n_squared(n, sign) * n_squared(n, sign);
  const double w2 = basis_norm_product_sq(n);
  const double kap = population_asymmetry(n, sign);
  const double s4 = s * s * s * s;
  const double a = pdc_skew_a(q, g);
  const double b = pdc_skew_b(q, g);
  const double c = pdc_skew_c(q, g);
  const double term1 = 1.0 / (2.0 * (1.0 - q));
  const double inner2 = 1.0 / (b * b) - q * s4 * n4 / (2.0 * w2) + 2.0 * q * kap * kap;
  const double term2 = a * a / 8.0 * inner2 * inner2;
  const double weight = 2.0 * kap * kap + s4 * n4 / (2.0 * w2);
  const double inner3 = b - q * a / 4.0 + s4 * q * q * n4 * c / (8.0 * w2) +
                        q * q * c * kap * kap / 2.0;
  const double term3 = weight * inner3 * inner3;
  return term1 + term2 + term3;
}

double pdc_concurrence(const NormalizationPack& n, Sign sign, double q, double s) {
  const double w = basis_norm_product(n);
  return std::max(0.0, s * s * q * n_squared(n, sign) / (2.0 * w) - 0.5 * (1.0 - q));
}

// ---- depolarizing -------------------------------------------------------

double dpc_epsilon(const NormalizationPack& n, Sign sign) {
  const double n2 = n_squared(n, sign);
  const double kap = population_asymmetry(n, sign);
  return 1.0 - n2 * n2 / basis_norm_product_sq(n) - 4.0 * kap * kap;
}

double dpc_qfi(const NormalizationPack& n, Sign sign, double q, double s) {
  const double e = dpc_epsilon(n, sign);
  const double s2 = s * s;
  const double s4 = s2 * s2;
  guard_denominator(1.0 - q * s2, "depolarizing Fisher form");
  const double denom = 1.0 + 2.0 * q * s2 + q * q * s4 * e;
  guard_denominator(denom, "depolarizing Fisher form");
  return 0.5 * s4 * (1.0 / (1.0 - q * s2) + (2.0 + (s2 * q - 1.0) * e) / denom);
}

// As printed, the first coefficient's inner square root carries 1+2q while
// the companion coefficients carry 1+2qs^2.
double dpc_skew_d(double q, double s, double e) {
  const double s2 = s * s, s4 = s2 * s2;
  const double inner = 1.0 + 2.0 * q + q * q * s4 * e;
  const double outer = 1.0 + 2.0 * q * s2 + q * q * s4 * e;
  guard_denominator(outer, "depolarizing skew coefficient");
  if (inner < 0.0) throw SingularBlock("depolarizing skew coefficient: negative radicand");
  return std::sqrt(2.0) * std::pow(1.0 + q * s2 + std::sqrt(inner), -0.5) *
         std::pow(outer, -0.5);
}

double dpc_skew_e(double q, double s, double e) {
  const double s2 = s * s, s4 = s2 * s2;
  const double inner = 1.0 + 2.0 * q * s2 + q * q * s4 * e;
  guard_denominator(inner, "depolarizing skew coefficient");
  return std::sqrt(2.0) * std::pow(1.0 + q * s2 + std::sqrt(inner), -0.5);
}

double dpc_skew_f(double q, double s, double e) {
  const double s2 = s * s, s4 = s2 * s2;
  const double inner = 1.0 + 2.0 * q * s2 + q * q * s4 * e;
  guard_denominator(inner, "depolarizing skew coefficient");
  return 2.0 * std::sqrt(2.0) * std::pow(1.0 + q * s2 + std::sqrt(inner), -1.5) *
         std::pow(inner, -0.5);
}

double dpc_skew(const NormalizationPack& n, Sign sign, double q, double s) {
  const double e = dpc_epsilon(n, sign);
  const double s2 = s * s, s4 = s2 * s2;
  guard_denominator(1.0 - s2 * q, "depolarizing skew form");
  const double n4 = n_squared(n, sign) * n_squared(n, sign);
  const double w2 = basis_norm_product_sq(n);
  const double kap = population_asymmetry(n, sign);
  const double d = dpc_skew_d(q, s, e);
  const double ee = dpc_skew_e(q, s, e);
  const double f = dpc_skew_f(q, s, e);
  const double term1 = 1.0 / (2.0 * (1.0 - s2 * q));
  const double inner2 = 1.0 / (ee * ee) - q * s2 * n4 / (2.0 * w2) + 2.0 * q * s2 * kap * kap;
  const double term2 = d * d * s4 / 8.0 * inner2 * inner2;
  const double weight = s4 * (2.0 * kap * kap + n4 / (2.0 * w2));
  const double inner3 = ee - q * s2 * d / 4.0 + q * q * s4 * n4 * f / (8.0 * w2) +
                        q * q * s4 * kap * kap * f / 2.0;
  const double term3 = weight * inner3 * inner3;
  return term1 + term2 + term3;
}

double dpc_concurrence(const NormalizationPack& n, Sign sign, double q, double s) {
  const double w = basis_norm_product(n);
  const double s2 = s * s;
  return std::max(0.0, (s2 * q * n_squared(n, sign) - (1.0 - s2 * q) * w) / (2.0 * w));
}

// ---- amplitude damping --------------------------------------------------

// Difference N-a^2 N-b^2 - N+a^2 N+b^2 entering the plus-family forms.
double adc_delta_plus(const NormalizationPack& n) {
  const double pa2 = n.n_plus_a * n.n_plus_a, ma2 = n.n_minus_a * n.n_minus_a;
  const double pb2 = n.n_plus_b * n.n_plus_b, mb2 = n.n_minus_b * n.n_minus_b;
  return ma2 * mb2 - pa2 * pb2;
}

double adc_plus_qfi_nu(const NormalizationPack& n, double s) {
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::plus);
  const double delta = adc_delta_plus(n);
  return (2.0 * (1.0 - s) + s * s) *
         (2.0 * s * s * w - s * (1.0 - s) * n2 * delta) / (8.0 * w);
}

double adc_plus_qfi_mu(const NormalizationPack& n, double q, double s) {
  const double nu = adc_plus_qfi_nu(n, s);
  const double base = s * s + 2.0 * (1.0 - s);
  guard_denominator(base, "amplitude-damping Fisher coefficient");
  return (2.0 * q * nu + base * base) / (2.0 * base);
}

double adc_plus_qfi_xi(const NormalizationPack& n, double s) {
  const double nu = adc_plus_qfi_nu(n, s);
  const double base = 2.0 * (1.0 - s) + s * s;
  guard_denominator(base, "amplitude-damping Fisher coefficient");
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::plus);
  const double pa2 = n.n_plus_a * n.n_plus_a, ma2 = n.n_minus_a * n.n_minus_a;
  const double pb2 = n.n_plus_b * n.n_plus_b, mb2 = n.n_minus_b * n.n_minus_b;
  return 2.0 * nu / base + s * s * n2 * (pa2 * pb2 - ma2 * mb2 - 4.0) / w;
}

double adc_plus_qfi(const NormalizationPack& n, double q, double s) {
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::plus);
  const double delta = adc_delta_plus(n);
  const double nu = adc_plus_qfi_nu(n, s);
  const double mu = adc_plus_qfi_mu(n, q, s);
  const double xi = adc_plus_qfi_xi(n, s);
  guard_denominator(mu, "amplitude-damping Fisher form (plus)");
  const double half = 1.0 - s + 0.5 * s * s;
  const double denom1 = half * half + 2.0 * q * nu + q * q * xi;
  guard_denominator(denom1, "amplitude-damping Fisher form (plus)");
  const double bracket_a = (4.0 * nu * nu - 4.0 * half * half * xi) / denom1;
  const double bracket_b = s * s - s * (1.0 - s) * n2 * delta / (2.0 * w);
  const double first = (bracket_a + bracket_b * bracket_b) / (4.0 * mu);
  const double num2 = (1.0 - s) * n2 * delta - 2.0 * s * w;
  const double denom2 = 4.0 * w * (w * (2.0 - s - 2.0 * q * s) + (1.0 - s) * n2 * delta);
  guard_denominator(denom2, "amplitude-damping Fisher form (plus)");
  return first + s * num2 * num2 / denom2;
}

double adc_minus_qfi_eta(const NormalizationPack& n, double s) {
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::minus);
  const double pa2 = n.n_plus_a * n.n_plus_a, ma2 = n.n_minus_a * n.n_minus_a;
  const double pb2 = n.n_plus_b * n.n_plus_b, mb2 = n.n_minus_b * n.n_minus_b;
  const double diff = ma2 * pb2 - pa2 * mb2;
  return 0.25 * s * s *
         (s * s - n2 * n2 * (1.0 + diff * diff) / (w * (1.0 + 4.0 * w)));
}

double adc_minus_qfi(const NormalizationPack& n, double q, double s) {
  guard_denominator(1.0 - q, "amplitude-damping Fisher form (minus)");
  const double s2 = s * s, s4 = s2 * s2;
  const double denom1 = 2.0 * (1.0 - q) * (s2 * (1.0 - q) + 4.0 * (1.0 - s));
  guard_denominator(denom1, "amplitude-damping Fisher form (minus)");
  const double first = (2.0 * s2 * (1.0 - s) + s4 * (1.0 - q)) / denom1;
  const double eta = adc_minus_qfi_eta(n, s);
  const double pref = s * (2.0 - s2) + 2.0 * s * q;
  guard_denominator(pref, "amplitude-damping Fisher form (minus)");
  const double inner_denom = s2 * (2.0 - s2 + 2.0 * q) + 2.0 * q * q * eta;
  guard_denominator(inner_denom, "amplitude-damping Fisher form (minus)");
  const double num = s * s2 * (2.0 - s2) + 2.0 * q * eta;
  return first + (s4 - 2.0 * eta + 2.0 * num * num / inner_denom) / pref;
}

double adc_plus_concurrence(const NormalizationPack& n, double q, double s) {
  const double w = basis_norm_product(n);
  const double kap = population_asymmetry(n, Sign::plus);
  const double val = s * q * n_squared(n, Sign::plus) / (2.0 * w) -
                     s * (1.0 + (1.0 - s) * q * kap) + 0.5 * s * s * (1.0 + q);
  return std::max(0.0, val);
}

double adc_minus_concurrence(const NormalizationPack& n, double q, double s) {
  const double w = basis_norm_product(n);
  const double rad = s * s * (1.0 - q) * (4.0 * (1.0 - s) + s * s * (1.0 - q));
  const double val = s * q * n_squared(n, Sign::minus) / (2.0 * w) -
                     0.5 * std::sqrt(std::max(rad, 0.0));
  return std::max(0.0, val);
}

double adc_plus_skew_sigma(const NormalizationPack& n, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  const double w = basis_norm_product_sq(n);
  const double n4 = n_squared(n, Sign::plus) * n_squared(n, Sign::plus);
  const double lead = s * s - 2.0 * s * (1.0 - s) * kap;
  return lead * lead - s * s * kap * kap - s * s * n4 / w;
}

double adc_plus_skew_r(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::plus);
  return q * s * s * n2 / (4.0 * w) + kap * (q * s * s * kap + s * (s - 1.0));
}

double adc_plus_skew_gamma(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  return 0.25 * (s * s - 2.0 * s + 2.0) * (s * s * (2.0 * q + 1.0) - 2.0 * s + 2.0) +
         (2.0 * s - s * s - 1.0) * (q * s * (1.0 - s) * kap + 1.0);
}

double adc_plus_skew_a(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  const double disc = 4.0 * adc_plus_skew_gamma(n, q, s) + q * q * adc_plus_skew_sigma(n, s);
  if (disc <= 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand <= 0");
  const double head = 2.0 * (1.0 - s) + s * s + q * (s * s - 2.0 * (1.0 - s) * kap) +
                      std::sqrt(disc);
  if (head < 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand < 0");
  return 2.0 * std::pow(disc, -0.5) * std::sqrt(head);
}

double adc_plus_skew_b(const NormalizationPack& n, double q, double s) {
  const double disc = 4.0 * adc_plus_skew_gamma(n, q, s) + q * q * adc_plus_skew_sigma(n, s);
  if (disc <= 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand <= 0");
  return 0.5 * adc_plus_skew_a(n, q, s) * std::sqrt(disc);
}

double adc_plus_skew_x(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  const double b = adc_plus_skew_b(n, q, s);
  guard_denominator(b, "amplitude-damping skew coefficient");
  const double n2 = n_squared(n, Sign::plus);
  return 2.0 * kap * ((1.0 - s) * (1.0 - 1.0 / (b * b)) - q * s * n2 * kap);
}

double adc_plus_skew_y(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  return (s * (1.0 + q * kap) - 1.0) * (s - 2.0 * (1.0 - s) * kap);
}

double adc_plus_skew(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::plus);
  const double w = basis_norm_product_sq(n);
  const double n2 = n_squared(n, Sign::plus);
  const double n4 = n2 * n2;
  const double a = adc_plus_skew_a(n, q, s);
  const double b = adc_plus_skew_b(n, q, s);
  const double x = adc_plus_skew_x(n, q, s);
  const double y = adc_plus_skew_y(n, q, s);
  const double r = adc_plus_skew_r(n, q, s);
  guard_denominator(b, "amplitude-damping skew form (plus)");

  const double inner1 = s / (b * b) + x - 2.0 * q * s * kap * kap - q * s * n4 / (2.0 * w);
  const double term1 = a * a * s * s / 8.0 * inner1 * inner1;

  const double lever = 2.0 * (1.0 - s) * kap - s;
  const double denom2 = 2.0 * (2.0 - s) + 2.0 * q * lever;
  guard_denominator(denom2, "amplitude-damping skew form (plus)");
  const double term2 = s * lever * lever / denom2;

  const double inner3 = b - q * s * a / 4.0 * (s - 2.0 * (1.0 - s) * kap) +
                        q * b * b * a / 2.0 * r;
  const double term3 = s * s * n4 / (2.0 * w) * inner3 * inner3;

  const double inner4 = -s * a * y + s * n2 * b * (2.0 + q * b * a * r) -
                        2.0 * (1.0 - s) * b * b * a * r;
  const double term4 = inner4 * inner4 / 8.0;
  return term1 + term2 + term3 + term4;
}

double adc_minus_skew_zeta(double q, double s) {
  const double rad = (1.0 - q) * (4.0 * (1.0 - s) + s * s * (1.0 - q));
  if (rad < 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand < 0");
  const double head = 2.0 * (1.0 - s) + s * s * (1.0 - q) + s * std::sqrt(rad);
  guard_denominator(head, "amplitude-damping skew coefficient");
  return std::sqrt(2.0) * std::pow(head, -0.5);
}

double adc_minus_skew_varsigma(double q, double s) {
  const double rad = (1.0 - q) * (1.0 - s + s * s * (1.0 - q));
  if (rad < 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand < 0");
  return 0.5 * s * adc_minus_skew_zeta(q, s) * std::sqrt(rad);
}

double adc_minus_skew_dcal(const NormalizationPack& n, double s) {
  const double kap = population_asymmetry(n, Sign::minus);
  const double w = basis_norm_product_sq(n);
  const double n4 = n_squared(n, Sign::minus) * n_squared(n, Sign::minus);
  return s * s - n4 / w - 4.0 * kap * kap;
}

double adc_minus_skew_upsilon(const NormalizationPack& n, double q, double s) {
  const double d = adc_minus_skew_dcal(n, s);
  const double rad = s * s * (2.0 - s) * (2.0 * q * s + 2.0 - s) + q * q * s * s * d;
  if (rad < 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand < 0");
  const double head = s * (2.0 + s) - q * s * s + std::sqrt(rad);
  guard_denominator(head, "amplitude-damping skew coefficient");
  return std::sqrt(2.0) * std::pow(head, -0.5);
}

double adc_minus_skew_theta(const NormalizationPack& n, double q, double s) {
  const double d = adc_minus_skew_dcal(n, s);
  const double rad = s * s * (2.0 - s) * (2.0 * q * s + 2.0 - s) + q * q * s * s * d;
  if (rad < 0.0) throw SingularBlock("amplitude-damping skew coefficient: radicand < 0");
  return adc_minus_skew_upsilon(n, q, s) * std::sqrt(2.0) * std::sqrt(rad);
}

double adc_minus_skew(const NormalizationPack& n, double q, double s) {
  const double kap = population_asymmetry(n, Sign::minus);
  const double w = basis_norm_product_sq(n);
  const double n4 = n_squared(n, Sign::minus) * n_squared(n, Sign::minus);
  const double s2 = s * s, s4 = s2 * s2;
  const double zeta = adc_minus_skew_zeta(q, s);
  const double vs = adc_minus_skew_varsigma(q, s);
  const double ups = adc_minus_skew_upsilon(n, q, s);
  const double th = adc_minus_skew_theta(n, q, s);
  guard_denominator(ups, "amplitude-damping skew form (minus)");
  guard_denominator(zeta, "amplitude-damping skew form (minus)");

  const double inner1 = 1.0 / (ups * ups) - q * n4 / (2.0 * w) - 2.0 * q * kap * kap;
  const double term1 = th * th * s4 / 8.0 * inner1 * inner1;

  const double term2 = vs * vs * s4 / 8.0 *
                       (1.0 / std::pow(zeta, 4.0) + (s - 1.0) * (s - 1.0));

  const double weight = s2 * n4 / (2.0 * w) + 2.0 * s2 * kap * kap;
  const double inner3 = ups - q * s2 * th / 4.0 +
                        q * q * s2 * ups * ups * th / 2.0 * (kap * kap + n4 / (4.0 * w));
  const double term3 = weight * inner3 * inner3;
  return term1 + term2 + term3;
}

}  // namespace

double qfi_closed(const QuasiWernerParams& p, const Channel& ch) {
  const NormalizationPack n = normalizations(p);
  switch (ch.kind) {
    case ChannelKind::phase_damping: return pdc_qfi(n, p.sign, p.q, ch.s);
    case ChannelKind::depolarizing: return dpc_qfi(n, p.sign, p.q, ch.s);
    case ChannelKind::amplitude_damping:
      return p.sign == Sign::plus ? adc_plus_qfi(n, p.q, ch.s) : adc_minus_qfi(n, p.q, ch.s);
  }
  throw Error("unreachable");
}

double skew_closed(const QuasiWernerParams& p, const Channel& ch) {
  const NormalizationPack n = normalizations(p);
  switch (ch.kind) {
    case ChannelKind::phase_damping: return pdc_skew(n, p.sign, p.q, ch.s);
    case ChannelKind::depolarizing: return dpc_skew(n, p.sign, p.q, ch.s);
    case ChannelKind::amplitude_damping:
      return p.sign == Sign::plus ? adc_plus_skew(n, p.q, ch.s) : adc_minus_skew(n, p.q, ch.s);
  }
  throw Error("unreachable");
}

double concurrence_closed(const QuasiWernerParams& p, const Channel& ch) {
  const NormalizationPack n = normalizations(p);
  switch (ch.kind) {
    case ChannelKind::phase_damping: return pdc_concurrence(n, p.sign, p.q, ch.s);
    case ChannelKind::depolarizing: return dpc_concurrence(n, p.sign, p.q, ch.s);
    case ChannelKind::amplitude_damping:
      return p.sign == Sign::plus ? adc_plus_concurrence(n, p.q, ch.s)
                                  : adc_minus_concurrence(n, p.q, ch.s);
  }
  throw Error("unreachable");
}

double qfi_closed_undamped(const QuasiWernerParams& p) {
  return qfi_total(closed_block_coeffs(p), closed_block_coeffs_dq(p)).qfi_total;
}

double skew_closed_undamped(const QuasiWernerParams& p) {
  return skew_total(closed_block_coeffs(p), closed_block_coeffs_dq(p)).skew_total;
}

ChannelClosedFormReport channel_closed_forms(const QuasiWernerParams& p, const Channel& ch) {
  ChannelClosedFormReport r;
  const ParametrizedFamily fam = mixing_family_evolved(p.alpha, p.beta, p.sign, ch);
  r.oracle_qfi = qfi_oracle(fam, p.q);
  r.oracle_skew = skew_oracle(fam, p.q);
  r.oracle_concurrence = concurrence_wootters(fam.matrix(p.q));

  try {
    r.qfi_closed = qfi_closed(p, ch);
  } catch (const SingularBlock&) {
    r.qfi_closed_defined = false;
  }
  try {
    r.skew_closed = skew_closed(p, ch);
  } catch (const SingularBlock&) {
    r.skew_closed_defined = false;
  }
  r.concurrence_closed = concurrence_closed(p, ch);

  if (!std::isfinite(r.qfi_closed)) r.qfi_closed_defined = false;
  if (!std::isfinite(r.skew_closed)) r.skew_closed_defined = false;

  auto devs = [](double closed, double oracle, double& abs_dev, double& rel_dev) {
    abs_dev = std::abs(closed - oracle);
    rel_dev = abs_dev / std::max(1.0, std::abs(oracle));
  };
  if (r.qfi_closed_defined) devs(r.qfi_closed, r.oracle_qfi, r.qfi_abs_dev, r.qfi_rel_dev);
  if (r.skew_closed_defined) devs(r.skew_closed, r.oracle_skew, r.skew_abs_dev, r.skew_rel_dev);
  devs(r.concurrence_closed, r.oracle_concurrence, r.concurrence_abs_dev, r.concurrence_rel_dev);
  return r;
}

namespace {

ChannelClosedFormReport checked_forms(const QuasiWernerParams& p, const Channel& ch,
                                      ChannelKind expected) {
  if (ch.kind != expected) throw OutOfDomain("channel kind mismatch");
  return channel_closed_forms(p, ch);
}

}  // namespace

ChannelClosedFormReport pdc_closed_forms(const QuasiWernerParams& p, const Channel& ch) {
  return checked_forms(p, ch, ChannelKind::phase_damping);
}

ChannelClosedFormReport dpc_closed_forms(const QuasiWernerParams& p, const Channel& ch) {
  return checked_forms(p, ch, ChannelKind::depolarizing);
}

ChannelClosedFormReport adc_closed_forms(const QuasiWernerParams& p, const Channel& ch) {
  return checked_forms(p, ch, ChannelKind::amplitude_damping);
}

}  // namespace xqm
