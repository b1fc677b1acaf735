#pragma once

#include "curvtree/parabolic.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvtree {

// Basis element (Y_w0)_k ^ ... ^ (Y_w{d-1})_k ⊗ e_value. Wedge indices are
// p+ basis positions in increasing order; unused slots are zero.
struct ChainKey {
    std::array<std::uint16_t, 3> wedge{};
    std::uint16_t value = 0;
    auto operator<=>(const ChainKey &) const = default;
};

struct ChainElement {
    int degree = 0;
    std::map<ChainKey, Scalar> terms; // no zero coefficients

    void add(const ChainKey &key, const Scalar &c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const ChainElement &o) const = default;
};
ChainElement operator+(const ChainElement &a, const ChainElement &b);
ChainElement operator-(const ChainElement &a, const ChainElement &b);
ChainElement operator*(const Scalar &s, const ChainElement &a);

struct HodgeBlock {
    int degree = 0;
    int homogeneity = 0;
    std::size_t weights = 0;  // number of weight blocks inspected
    std::size_t dim = 0;      // dim of the degree/homogeneity block
    std::size_t im_d = 0;     // dim im of the differential into the block
    std::size_t ker_box = 0;  // dim ker of the Laplacian
    std::size_t im_dstar = 0; // dim im of the codifferential into the block
    std::size_t ker_d = 0;
    std::size_t ker_dstar = 0;
};

struct Candidate {
    Covector beta, gamma, zeta;
    ChainElement chain;
    bool bbw = false;            // seeded by the Kostant BBW form
    bool zeta_opposes = false;   // zeta in {-beta, -gamma}
};

enum class LemmaVerdict { Passed, Violation, HypothesisNotMet };
struct LemmaCheck {
    LemmaVerdict verdict = LemmaVerdict::HypothesisNotMet;
    std::string detail;
};

// Lambda^k p+ ⊗ g for k <= 3. Values are taken against the adapted basis of g.
class KostantComplex {
  public:
    explicit KostantComplex(std::shared_ptr<const ParabolicGrading> grading);

    const ParabolicGrading &grading() const { return *grading_; }
    const RestrictedRootSystem &system() const { return grading_->system(); }
    std::size_t pdim() const { return y_.size(); }  // dim p+
    std::size_t gdim() const { return n_; }

    // p+ basis Y_a as adapted indices; the Killing-dual basis V_a of g- (in g coordinates)
    std::size_t y_adapted(std::size_t a) const { return y_[a]; }
    std::optional<std::size_t> y_index(std::size_t adapted) const;
    const Vector &v_vector(std::size_t a) const { return v_[a]; }
    Vector adapted_vector(std::size_t j) const { return system().adapted_basis()[j]; }
    std::string adapted_label(std::size_t j) const;

    // weight and homogeneity of a basis key
    Covector key_weight(int degree, const ChainKey &key) const;
    int key_homogeneity(int degree, const ChainKey &key) const;

    ChainElement codifferential(const ChainElement &c) const;
    ChainElement differential(const ChainElement &c) const;
    ChainElement laplacian(const ChainElement &c) const;
    ChainElement g0_action(const Vector &z, const ChainElement &c) const; // z in g coordinates
    bool is_lowest_weight(const ChainElement &c) const;

    // c(x_1, ..., x_k) for x_i in g, pairing each slot by the Killing form; g coordinates
    Vector evaluate(const ChainElement &c, const std::vector<Vector> &xs) const;
    // kappa(Y_a, x) for all a
    Vector pairing(const Vector &x) const;

    // chain from terms (eta_beta, eta_gamma, eta_zeta, coefficient), vectors in g coordinates
    struct Term {
        Vector beta, gamma, zeta;
        Scalar coeff;
    };
    ChainElement make_chain(const std::vector<Term> &terms) const;

    // all degree-k keys of a given weight
    std::vector<ChainKey> block(int degree, const Covector &weight) const;
    // distinct weights of degree-k keys with the given homogeneity
    std::vector<Covector> weights(int degree, int homogeneity) const;
    // homogeneities occurring in degree k
    std::vector<int> homogeneities(int degree) const;

    // throws AuditFailure on any inconsistency
    HodgeBlock hodge_audit(int degree, int homogeneity) const;

    // parallel > 1 spreads the scan over worker threads; output order is canonical
    std::vector<Candidate> enumerate_candidates(unsigned parallel = 1) const;
    bool is_split() const;

    LemmaCheck lemma_assume_check(const Covector &beta, const Covector &gamma,
                                  const Covector &zeta, const ChainElement &c) const;

    std::string render(const ChainElement &c) const;
    ChainElement random_chain(int degree, std::uint32_t seed, std::size_t terms = 6) const;

  private:
    void push_differential(const ChainKey &key, int degree, const Scalar &coef,
                           ChainElement &out) const;
    void push_codifferential(const ChainKey &key, int degree, const Scalar &coef,
                             ChainElement &out) const;
    Matrix operator_matrix(const std::vector<ChainKey> &from, int from_degree,
                           const std::vector<ChainKey> &to, int op) const;
    std::vector<Candidate> scan_triple(std::size_t beta, std::size_t gamma,
                                       std::size_t zeta) const;

    std::shared_ptr<const ParabolicGrading> grading_;
    std::size_t n_ = 0;
    std::vector<std::size_t> y_;             // p+ basis, adapted indices
    std::map<std::size_t, std::size_t> y_of_; // adapted index -> p+ position
    std::vector<SparseVector> table_;        // adapted structure constants
    std::vector<SparseVector> pp_;           // [Y_a, Y_b] in p+ coordinates
    std::vector<SparseVector> mv_;           // [V_b, e_j] in adapted coordinates
    std::vector<std::vector<std::pair<std::pair<std::uint16_t, std::uint16_t>, Scalar>>> mm_;
    std::vector<Vector> v_;                  // V_a in g coordinates
    std::vector<Vector> y_lower_;            // kappa(Y_a, .) on the g basis
    std::map<Covector, std::vector<std::size_t>> by_weight_; // adapted indices per weight
};

} // namespace curvtree
