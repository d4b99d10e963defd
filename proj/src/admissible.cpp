#include "polyvol/admissible.hpp"

#include <algorithm>
#include <map>

namespace polyvol {

namespace {

// Strict lexicographic comparison of a and b after reordering by sigma.
bool sigma_lex_less(const ExponentVector& a, const ExponentVector& b, const std::vector<int>& sigma) {
  for (int s : sigma) {
    int ai = a[s - 1], bi = b[s - 1];
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace

std::vector<AdmissibleCertificate> admissible_monomials(const SparsePolynomial& p) {
  int n = p.dimension();
  if (p.is_constant()) throw std::domain_error("admissibility requires a nonconstant polynomial");
  std::vector<AdmissibleCertificate> out;

  std::vector<ExponentVector> support;
  support.reserve(p.term_count());
  for (const auto& [a, c] : p.terms()) support.push_back(a);

  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i + 1;

  std::map<ExponentVector, std::vector<int>, GrlexLess> found;
  do {
    // the sigma-lex maximum of the support is unique because lex is total
    const ExponentVector* best = &support[0];
    for (std::size_t k = 1; k < support.size(); ++k)
      if (sigma_lex_less(*best, support[k], sigma)) best = &support[k];
    if ((*best)[sigma[0] - 1] < 1) continue;
    auto it = found.find(*best);
    if (it == found.end())
      found.emplace(*best, sigma);
    else if (sigma < it->second)
      it->second = sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  for (auto& [a, s] : found) out.push_back({a, s});
  return out;
}

std::optional<AdmissibleCertificate> is_admissible(const SparsePolynomial& p, const ExponentVector& alpha) {
  if (p.coefficient(alpha).is_zero()) throw std::invalid_argument("monomial is not in the support");
  for (const auto& cert : admissible_monomials(p))
    if (cert.alpha == alpha) return cert;
  return std::nullopt;
}

AdmissibleDegree admissible_degree(const SparsePolynomial& p) {
  auto certs = admissible_monomials(p);
  if (certs.empty()) throw std::domain_error("polynomial has no admissible monomials");
  // certs are grlex-sorted, so the first one has minimal total degree and is
  // the grlex-smallest among ties
  const AdmissibleCertificate& best = certs.front();
  return {best.alpha.total(), best};
}

std::pair<Rational, Rational> theta_tau(int l, int alpha_total) {
  if (l < 1) throw std::invalid_argument("chain length must be at least 1");
  if (alpha_total < 1) throw std::invalid_argument("monomial degree must be at least 1");
  Rational half_pow = Rational(2).pow(l - 1);
  Rational den = half_pow + Rational(alpha_total);
  return {(Rational(1) - half_pow) / den, half_pow / den};
}

}  // namespace polyvol
