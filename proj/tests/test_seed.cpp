#include "curvtree/errors.hpp"
#include "curvtree/fixtures.hpp"

#include <gtest/gtest.h>

using namespace curvtree;

TEST(Seed, GrassmannianSeedCertifies) {
    Instance inst = instantiate(find_fixture("grassmannian_k2_m4"));
    auto c = certify_harmonic_seed(*inst.complex, inst.seed);
    EXPECT_EQ(c.verdict, SeedVerdict::HarmonicSeed) << c.reason;
    EXPECT_TRUE(c.kt.holds());
    EXPECT_TRUE(c.jacobi);
    EXPECT_TRUE(c.d_omega_vanishes);
    EXPECT_TRUE(c.image_in_b_minus);
    EXPECT_EQ(c.image_dim, 1u);
    ASSERT_TRUE(c.corollary);
    EXPECT_TRUE(*c.corollary);
}

TEST(Seed, VerdictsAreScaleInvariant) {
    Instance inst = instantiate(find_fixture("quaternionic_m2_n2"));
    auto base = certify_harmonic_seed(*inst.complex, inst.seed);
    auto half = certify_harmonic_seed(*inst.complex, scaled(inst.seed, Scalar(-1, 2)));
    EXPECT_EQ(base.verdict, SeedVerdict::HarmonicSeed) << base.reason;
    EXPECT_EQ(half.verdict, base.verdict);
    EXPECT_EQ(half.image_dim, base.image_dim);
    EXPECT_EQ(half.k_omega_dim, base.k_omega_dim);
}

TEST(Seed, QuaternionicImageIsTwoDimensional) {
    Instance inst = instantiate(find_fixture("quaternionic_m2_n2"));
    auto oik = omega_image_kernel(*inst.complex, inst.seed.omega);
    EXPECT_EQ(oik.image.dim(), 2u);
    EXPECT_TRUE(check_kruglikov_the(*inst.complex, inst.seed.omega).holds());
}

TEST(Seed, OmegaMapIsAntisymmetric) {
    Instance inst = instantiate(find_fixture("path_m5"));
    const auto &k = *inst.complex;
    OmegaMap om(k, inst.seed.omega);
    for (std::size_t a = 0; a < k.pdim(); ++a)
        for (std::size_t b = 0; b < k.pdim(); ++b)
            EXPECT_EQ(om(k.v_vector(a), k.v_vector(b)), -om(k.v_vector(b), k.v_vector(a)));
}

TEST(Seed, StabilizerAnnihilatesOmega) {
    Instance inst = instantiate(find_fixture("borel_pgl4_pos"));
    const auto &k = *inst.complex;
    auto kom = stabilizer_algebra(k, inst.seed.omega);
    EXPECT_GT(kom.dim(), 0u);
    for (const auto &z : kom.basis())
        EXPECT_TRUE(k.g0_action(z, inst.seed.omega).is_zero());
}

TEST(Seed, ZeroOmegaIsRejected) {
    Instance inst = instantiate(find_fixture("grassmannian_k2_m4"));
    Seed zero = scaled(inst.seed, 0);
    auto c = certify_harmonic_seed(*inst.complex, zero);
    EXPECT_NE(c.verdict, SeedVerdict::HarmonicSeed);
}

TEST(Seed, NonHarmonicChainIsNotCertified) {
    Fixture f = find_fixture("quaternionic_m2_n2");
    f.terms[0].coeff = 2;
    Instance inst = instantiate(f);
    auto c = certify_harmonic_seed(*inst.complex, inst.seed);
    EXPECT_EQ(c.verdict, SeedVerdict::NotCertified);
}

TEST(Seed, TermsOutsideTheirRootSpacesAreRejected) {
    Fixture f = find_fixture("grassmannian_k2_m4");
    f.terms[0].zeta = "E12";
    EXPECT_THROW(instantiate(f), Error);
}

// E21 spans im(Omega) and, being a negative g0 root vector, also stabilizes the lowest weight seed
TEST(Seed, GrassmannianNilradicalIsTheImageLine) {
    Instance inst = instantiate(find_fixture("grassmannian_k2_m4"));
    const auto &k = *inst.complex;
    auto d = build_deformed_algebra(k, inst.seed.omega);
    auto f = analyze_f_omega(k, inst.seed.omega, d);
    Vector e21 = basis_vector(*inst.realization.algebra, "E21");
    EXPECT_EQ(f.n_omega.dim(), 1u);
    EXPECT_TRUE(f.n_omega.contains(e21));
    EXPECT_TRUE(f.ideal);
    EXPECT_TRUE(f.solvable);
}
