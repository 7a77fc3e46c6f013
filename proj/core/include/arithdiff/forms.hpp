#ifndef ARITHDIFF_FORMS_HPP
#define ARITHDIFF_FORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include <arithdiff/deltajet.hpp>
#include <arithdiff/modular.hpp>
#include <arithdiff/multiprime.hpp>

namespace arithdiff
{

// Sum a_n q^n as an element of the q-side jet ring, known below q^order.
PadicJet embed_qexpansion(const RationalSeries &f, long p, int modulus_exponent);

// delta^n(f(q)) in R((q))^[q',...,q^(n)]^.
PadicJet delta_fourier_expand(const QExpansion &f, int n, long p, int modulus_exponent);

// (1/p) sum_{n <= window} (a_n/n)(phi^2(q)^n - a_p phi(q)^n + p q^n), known
// below weight window+1 (wt q = 1, wt q' = p, wt q'' = p^2). `an` is
// indexed by n. Throws IntegralityViolation on a non-p-integral coefficient.
RationalJet fsharp_exact(const std::vector<Integer> &an, const Integer &ap, long p, long window);
PadicJet fsharp_expansion(const std::vector<Integer> &an, const Integer &ap, long p, int modulus_exponent,
                          long window);

// (1/(p_1...p_d)) prod_k (phi_{p_k}^2 - a_{p_k} phi_{p_k} + p_k) sum (a_n/n) q^n
// on a q-side frame. ap[k-1] is a_{p_k}.
RationalMulti build_f2e0(const std::vector<Integer> &an, const FramePtr &frame, const std::vector<Integer> &ap);

// prod_{l != k}(1 - a_{p_l} phi_{p_l}/p_l + p_l (phi_{p_l}/p_l)^2) applied to
// f^sharp for p_k, in the per-prime ring k.
RationalMulti build_f2e_k(const std::vector<Integer> &an, const FramePtr &frame, const std::vector<Integer> &ap,
                          int k);

struct CovarianceReport {
    std::string gamma;
    long nu = 0;
    bool pass = false;
    // Nothing below the truncation bound could be compared.
    bool indeterminate = false;
    std::size_t compared = 0;
    std::optional<std::string> witness;
    std::string lhs_coefficient;
    std::string rhs_coefficient;
};

// Compares F(delta_P^i([gamma](b))) with gamma^nu F(delta_P^i b), where
// [gamma](t) = (1+t)^gamma - 1 on the t side and [gamma](q) = q^gamma on the
// q side. gamma must be an integer >= 2 with gamma mod p not in {0, 1}.
CovarianceReport covariance_check(const RationalMulti &f, long gamma, long nu);
CovarianceReport covariance_check(const RationalJet &f, long gamma, long nu);
// p-adic gamma, single prime, t side.
CovarianceReport covariance_check(const PadicJet &f, const PadicTrunc &gamma, long nu);

// Expansions E(f^1) = Psi, E(f^partial) = 1, E(f^natural) = Psi on the t side.
struct SpecialExpansions {
    RationalJet f1;
    RationalJet fpartial;
    RationalJet fnatural;
};
SpecialExpansions expansion_of_f1_fnatural(long p, long bound);

} // namespace arithdiff

#endif
