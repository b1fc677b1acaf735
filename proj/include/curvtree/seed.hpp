#pragma once

#include "curvtree/kostant.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvtree {

struct Seed {
    Covector beta, gamma, zeta;
    ChainElement omega;
    std::vector<KostantComplex::Term> terms;
};

// Validates that every term lies in g_beta x g_gamma x g_zeta. Throws Error.
Seed make_seed(const KostantComplex &k, const Covector &beta, const Covector &gamma,
               const Covector &zeta, std::vector<KostantComplex::Term> terms);
Seed seed_from_candidate(const KostantComplex &k, const Candidate &c);
Seed scaled(const Seed &s, const Scalar &factor);

// Omega(x ^ y) for x, y in g (pairing against p+ projects along p)
class OmegaMap {
  public:
    OmegaMap(const KostantComplex &k, const ChainElement &omega);
    Vector operator()(const Vector &x, const Vector &y) const;
    // Omega(V_p ^ V_q), p < q, on the dual basis of g-
    const Vector &on_pair(std::size_t p, std::size_t q) const { return pairs_[index(p, q)]; }
    std::size_t index(std::size_t p, std::size_t q) const;
    std::size_t pair_count() const { return pairs_.size(); }

  private:
    const KostantComplex *k_;
    std::size_t P_;
    std::vector<Vector> pairs_;
};

Subspace stabilizer_algebra(const KostantComplex &k, const ChainElement &omega);

struct OmegaImageKernel {
    Subspace image;         // im(Omega) in g
    Subspace kernel;        // ker(Omega) in Lambda^2 g-, coordinates on V_p ^ V_q (p < q)
    Subspace wedge_image;   // im(Omega ∧ id) in the same coordinates
};
OmegaImageKernel omega_image_kernel(const KostantComplex &k, const ChainElement &omega);

struct KruglikovThe {
    bool image_condition = true;  // im(Omega) in g- + k_Omega
    bool wedge_condition = true;  // im(Omega ∧ id) in ker(Omega)
    std::optional<Vector> witness;
    bool holds() const { return image_condition && wedge_condition; }
};
KruglikovThe check_kruglikov_the(const KostantComplex &k, const ChainElement &omega);

struct DeformedAlgebra {
    Subspace carrier;                 // g- + k_Omega in g coordinates
    Subspace k_omega;
    std::vector<Vector> basis;        // dual basis of g-, then k_Omega
    std::shared_ptr<const LieAlgebra> algebra; // null when Jacobi fails
    Bracket bracket;                  // deformed bracket on g coordinates
    bool jacobi = false;
    std::optional<std::array<std::size_t, 3>> jacobi_witness;
    bool d_omega_vanishes = false;    // independent check of the "d Omega" map
    std::optional<std::array<std::size_t, 3>> d_omega_witness;
};
// Throws NotClosed if the carrier is not closed under the deformed bracket.
DeformedAlgebra build_deformed_algebra(const KostantComplex &k, const ChainElement &omega);

struct FOmegaReport {
    Subspace f_omega, n_omega;
    bool ideal = false;
    bool solvable = false;
    std::vector<std::size_t> derived_dims;
    bool image_in_b_minus = false;
};
FOmegaReport analyze_f_omega(const KostantComplex &k, const ChainElement &omega,
                             const DeformedAlgebra &d);

enum class SeedVerdict { HarmonicSeed, NotCertified, HypothesesNotMet };

struct SeedCertificate {
    bool laplacian_zero = false;
    bool lowest_weight = false;
    Scalar homogeneity;
    bool zeta_gate = false;           // zeta not in {-beta, -gamma}
    bool kt_checked = false;          // later stages run only when earlier ones pass
    KruglikovThe kt;
    bool structure_checked = false;
    bool image_in_b_minus = false;
    bool jacobi = false;
    bool d_omega_vanishes = false;
    bool f_ideal = false;
    bool f_solvable = false;
    std::size_t k_omega_dim = 0, image_dim = 0, n_omega_dim = 0;
    std::optional<bool> corollary;    // split case: beta+gamma, beta+zeta, gamma+zeta neither roots nor 0
    SeedVerdict verdict = SeedVerdict::NotCertified;
    std::string reason;               // first unmet hypothesis
};
SeedCertificate certify_harmonic_seed(const KostantComplex &k, const Seed &seed);

std::string to_string(SeedVerdict v);

} // namespace curvtree
