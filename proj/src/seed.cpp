#include "curvtree/seed.hpp"

#include "curvtree/errors.hpp"

#include <map>

namespace curvtree {

namespace {

// kernel of the linear map sending basis vector i to images[i]
std::vector<Vector> chain_relations(const std::vector<ChainElement> &images) {
    std::map<ChainKey, std::size_t> rows;
    for (const auto &img : images)
        for (const auto &[k, v] : img.terms)
            rows.try_emplace(k, rows.size());
    Matrix m(rows.size(), images.size());
    for (std::size_t c = 0; c < images.size(); ++c)
        for (const auto &[k, v] : images[c].terms)
            m(rows[k], c) = v;
    return kernel(m);
}

bool in_root_space(const RestrictedRootSystem &rs, const Vector &x, const Covector &nu) {
    auto idx = rs.index_of(nu);
    if (!idx)
        return false;
    return Subspace(x.size(), rs.root_space(*idx)).contains(x);
}

} // namespace

Seed make_seed(const KostantComplex &k, const Covector &beta, const Covector &gamma,
               const Covector &zeta, std::vector<KostantComplex::Term> terms) {
    const auto &rs = k.system();
    for (const auto &t : terms) {
        if (!in_root_space(rs, t.beta, beta) || !in_root_space(rs, t.gamma, gamma) ||
            !in_root_space(rs, t.zeta, zeta))
            throw Error("seed term does not lie in g_beta x g_gamma x g_zeta");
    }
    Seed s{beta, gamma, zeta, k.make_chain(terms), std::move(terms)};
    return s;
}

Seed seed_from_candidate(const KostantComplex &k, const Candidate &c) {
    const auto &rs = k.system();
    const auto &adapted = rs.adapted_basis();
    auto beta_idx = *rs.index_of(c.beta);
    std::vector<KostantComplex::Term> terms;
    for (const auto &[key, coef] : c.chain.terms) {
        std::size_t a = k.y_adapted(key.wedge[0]), b = k.y_adapted(key.wedge[1]);
        Scalar f = coef;
        if (rs.adapted_root(a) != static_cast<long>(beta_idx)) {
            std::swap(a, b);
            f = -f;
        }
        terms.push_back({adapted[a], adapted[b], adapted[key.value], f});
    }
    return make_seed(k, c.beta, c.gamma, c.zeta, std::move(terms));
}

Seed scaled(const Seed &s, const Scalar &factor) {
    Seed out = s;
    out.omega = factor * s.omega;
    for (auto &t : out.terms)
        t.coeff *= factor;
    return out;
}

OmegaMap::OmegaMap(const KostantComplex &k, const ChainElement &omega)
    : k_(&k), P_(k.pdim()) {
    if (omega.degree != 2)
        throw Error("Omega must be a 2-chain");
    pairs_.assign(P_ * (P_ - 1) / 2, zeros(k.gdim()));
    const auto &adapted = k.system().adapted_basis();
    for (const auto &[key, coef] : omega.terms)
        axpy(pairs_[index(key.wedge[0], key.wedge[1])], coef, adapted[key.value]);
}

std::size_t OmegaMap::index(std::size_t p, std::size_t q) const {
    // row-major upper triangle
    return p * (2 * P_ - p - 1) / 2 + (q - p - 1);
}

Vector OmegaMap::operator()(const Vector &x, const Vector &y) const {
    Vector px = k_->pairing(x), py = k_->pairing(y);
    Vector out = zeros(k_->gdim());
    for (std::size_t p = 0; p < P_; ++p)
        for (std::size_t q = p + 1; q < P_; ++q) {
            const auto &val = pairs_[index(p, q)];
            if (is_zero(val))
                continue;
            Scalar f = px[p] * py[q] - px[q] * py[p];
            if (sgn(f) != 0)
                axpy(out, f, val);
        }
    return out;
}

Subspace stabilizer_algebra(const KostantComplex &k, const ChainElement &omega) {
    const auto &rs = k.system();
    const auto &adapted = rs.adapted_basis();
    std::vector<Vector> g0;
    std::vector<ChainElement> images;
    for (std::size_t j = 0; j < k.gdim(); ++j)
        if (k.grading().adapted_degree(j) == 0) {
            g0.push_back(adapted[j]);
            images.push_back(k.g0_action(adapted[j], omega));
        }
    Subspace out(k.gdim());
    for (const auto &rel : chain_relations(images)) {
        Vector z = zeros(k.gdim());
        for (std::size_t i = 0; i < g0.size(); ++i)
            if (sgn(rel[i]) != 0)
                axpy(z, rel[i], g0[i]);
        out.add(z);
    }
    return out;
}

namespace {

// (Omega ∧ id)(V_p ^ V_q ^ V_r) in V-pair coordinates
Vector wedge_image_vector(const KostantComplex &k, const OmegaMap &om, std::size_t p,
                          std::size_t q, std::size_t r) {
    const std::size_t P = k.pdim();
    Vector out(om.pair_count());
    auto add_wedge = [&](const Vector &x, std::size_t s, const Scalar &sign) {
        Vector coords = k.pairing(x); // V-coordinates of the g- projection
        for (std::size_t c = 0; c < P; ++c) {
            if (sgn(coords[c]) == 0 || c == s)
                continue;
            if (c < s)
                out[om.index(c, s)] += sign * coords[c];
            else
                out[om.index(s, c)] -= sign * coords[c];
        }
    };
    add_wedge(om.on_pair(p, q), r, 1);
    add_wedge(om.on_pair(p, r), q, -1);
    add_wedge(om.on_pair(q, r), p, 1);
    return out;
}

Vector omega_on_pairs(const OmegaMap &om, const Vector &w, std::size_t n, std::size_t P) {
    Vector out = zeros(n);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = p + 1; q < P; ++q) {
            const Scalar &c = w[om.index(p, q)];
            if (sgn(c) != 0)
                axpy(out, c, om.on_pair(p, q));
        }
    return out;
}

} // namespace

OmegaImageKernel omega_image_kernel(const KostantComplex &k, const ChainElement &omega) {
    OmegaMap om(k, omega);
    const std::size_t n = k.gdim(), P = k.pdim(), m = om.pair_count();
    OmegaImageKernel out{Subspace(n), Subspace(m), Subspace(m)};
    Matrix a(n, m);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = p + 1; q < P; ++q) {
            const auto &v = om.on_pair(p, q);
            out.image.add(v);
            for (std::size_t i = 0; i < n; ++i)
                a(i, om.index(p, q)) = v[i];
        }
    for (const auto &v : kernel(a))
        out.kernel.add(v);
    if (!out.image.dim())
        return out;
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = p + 1; q < P; ++q)
            for (std::size_t r = q + 1; r < P; ++r)
                out.wedge_image.add(wedge_image_vector(k, om, p, q, r));
    return out;
}

KruglikovThe check_kruglikov_the(const KostantComplex &k, const ChainElement &omega) {
    KruglikovThe out;
    OmegaMap om(k, omega);
    const std::size_t P = k.pdim();
    Subspace target = sum(k.grading().g_minus(), stabilizer_algebra(k, omega));
    for (std::size_t p = 0; p < P && out.image_condition; ++p)
        for (std::size_t q = p + 1; q < P; ++q)
            if (!target.contains(om.on_pair(p, q))) {
                out.image_condition = false;
                out.witness = om.on_pair(p, q);
                break;
            }
    // Omega vanishes on im(Omega ∧ id); only triples meeting the support matter
    std::vector<bool> live(P, false);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = p + 1; q < P; ++q)
            if (!is_zero(om.on_pair(p, q)))
                live[p] = live[q] = true;
    for (std::size_t p = 0; p < P && out.wedge_condition; ++p)
        for (std::size_t q = p + 1; q < P && out.wedge_condition; ++q)
            for (std::size_t r = q + 1; r < P; ++r) {
                if (!live[p] && !live[q] && !live[r])
                    continue;
                Vector w = wedge_image_vector(k, om, p, q, r);
                if (!is_zero(omega_on_pairs(om, w, k.gdim(), P))) {
                    out.wedge_condition = false;
                    out.witness = w;
                    break;
                }
            }
    return out;
}

DeformedAlgebra build_deformed_algebra(const KostantComplex &k, const ChainElement &omega) {
    const auto &g = k.system().algebra();
    const std::size_t n = k.gdim(), P = k.pdim();
    auto om = std::make_shared<OmegaMap>(k, omega);
    DeformedAlgebra d;
    d.k_omega = stabilizer_algebra(k, omega);
    for (std::size_t a = 0; a < P; ++a)
        d.basis.push_back(k.v_vector(a));
    for (const auto &z : d.k_omega.basis())
        d.basis.push_back(z);
    d.carrier = Subspace(n, d.basis);
    if (d.carrier.dim() != d.basis.size())
        throw Error("deformed algebra: carrier basis is dependent");
    const LieAlgebra *gp = &g;
    d.bracket = [gp, om](const Vector &x, const Vector &y) { return gp->bracket(x, y) - (*om)(x, y); };

    const std::size_t dim = d.basis.size();
    std::vector<SparseVector> table(dim * dim);
    std::vector<Vector> br(dim * dim, zeros(n)); // deformed brackets in g coordinates
    std::vector<Vector> ord(dim * dim, zeros(n)); // ordinary brackets
    std::vector<Vector> om_ij(dim * dim, zeros(n));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            ord[i * dim + j] = g.bracket(d.basis[i], d.basis[j]);
            om_ij[i * dim + j] = (*om)(d.basis[i], d.basis[j]);
            Vector b = ord[i * dim + j] - om_ij[i * dim + j];
            auto c = sparsify(d.carrier.coordinates(b)); // throws NotClosed
            SparseVector neg = c;
            for (auto &t : neg)
                t.coeff = -t.coeff;
            table[i * dim + j] = std::move(c);
            table[j * dim + i] = std::move(neg);
            br[i * dim + j] = std::move(b);
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i)
        labels.push_back(i < P ? "n" + std::to_string(i + 1) : "k" + std::to_string(i - P + 1));
    d.jacobi_witness = jacobi_witness(table, dim);
    d.jacobi = !d.jacobi_witness;
    if (d.jacobi)
        d.algebra = std::make_shared<LieAlgebra>(labels, table);

    // "d Omega"(X,Y,Z) = [X,W(Y,Z)] - [Y,W(X,Z)] + [Z,W(X,Y)] - W([X,Y],Z) + W([X,Z],Y) - W([Y,Z],X)
    std::vector<Vector> pair_basis(dim), pair_ord(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        pair_basis[i] = k.pairing(d.basis[i]);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            pair_ord[i * dim + j] = k.pairing(ord[i * dim + j]);
    auto W = [&](const Vector &px, const Vector &py) {
        Vector out = zeros(n);
        for (std::size_t p = 0; p < P; ++p) {
            if (sgn(px[p]) == 0 && sgn(py[p]) == 0)
                continue;
            for (std::size_t q = p + 1; q < P; ++q) {
                const auto &val = om->on_pair(p, q);
                if (is_zero(val))
                    continue;
                Scalar f = px[p] * py[q] - px[q] * py[p];
                if (sgn(f) != 0)
                    axpy(out, f, val);
            }
        }
        return out;
    };
    d.d_omega_vanishes = true;
    for (std::size_t i = 0; i < dim && d.d_omega_vanishes; ++i)
        for (std::size_t j = i + 1; j < dim && d.d_omega_vanishes; ++j)
            for (std::size_t l = j + 1; l < dim; ++l) {
                Vector s = zeros(n);
                const auto &wjl = om_ij[j * dim + l], &wil = om_ij[i * dim + l],
                           &wij = om_ij[i * dim + j];
                if (!is_zero(wjl))
                    s = s + g.bracket(d.basis[i], wjl);
                if (!is_zero(wil))
                    s = s - g.bracket(d.basis[j], wil);
                if (!is_zero(wij))
                    s = s + g.bracket(d.basis[l], wij);
                s = s - W(pair_ord[i * dim + j], pair_basis[l]);
                s = s + W(pair_ord[i * dim + l], pair_basis[j]);
                s = s - W(pair_ord[j * dim + l], pair_basis[i]);
                if (!is_zero(s)) {
                    d.d_omega_vanishes = false;
                    d.d_omega_witness = std::array<std::size_t, 3>{i, j, l};
                    break;
                }
            }
    return d;
}

FOmegaReport analyze_f_omega(const KostantComplex &k, const ChainElement &omega,
                             const DeformedAlgebra &d) {
    FOmegaReport r;
    auto oik = omega_image_kernel(k, omega);
    r.f_omega = sum(k.grading().g_minus(), oik.image);
    r.n_omega = intersect(r.f_omega, d.k_omega);
    r.ideal = is_ideal(r.f_omega, d.carrier, d.bracket).ideal;
    try {
        auto ds = derived_series(r.f_omega, d.bracket);
        r.solvable = ds.solvable;
        for (const auto &t : ds.terms)
            r.derived_dims.push_back(t.dim());
    } catch (const NotClosed &) {
        r.solvable = false;
    }
    const auto &rs = k.system();
    Subspace b_minus(k.gdim());
    for (std::size_t i = rs.num_positive(); i < rs.roots().size(); ++i)
        for (const auto &v : rs.root_space(i))
            b_minus.add(v);
    r.image_in_b_minus = b_minus.contains(oik.image);
    return r;
}

std::string to_string(SeedVerdict v) {
    switch (v) {
    case SeedVerdict::HarmonicSeed:
        return "harmonic seed";
    case SeedVerdict::NotCertified:
        return "not certified";
    case SeedVerdict::HypothesesNotMet:
        return "theorem hypotheses not met";
    }
    return "";
}

SeedCertificate certify_harmonic_seed(const KostantComplex &k, const Seed &seed) {
    const auto &rs = k.system();
    SeedCertificate c;
    auto fail = [&](SeedVerdict v, const std::string &why) {
        if (c.reason.empty()) {
            c.verdict = v;
            c.reason = why;
        }
    };
    c.homogeneity = k.grading().homogeneity(seed.beta + seed.gamma + seed.zeta);
    c.laplacian_zero = !seed.omega.is_zero() && k.laplacian(seed.omega).is_zero();
    c.lowest_weight = k.is_lowest_weight(seed.omega);
    if (seed.omega.is_zero())
        fail(SeedVerdict::HypothesesNotMet, "Omega is zero");
    if (!c.laplacian_zero)
        fail(SeedVerdict::NotCertified, "Omega is not Kostant-harmonic");
    if (!c.lowest_weight)
        fail(SeedVerdict::NotCertified, "Omega is not a lowest weight vector");
    if (sgn(c.homogeneity) <= 0)
        fail(SeedVerdict::HypothesesNotMet, "homogeneity is not positive");
    if (!k.grading().in_delta_plus_p(seed.beta) || !k.grading().in_delta_plus_p(seed.gamma) ||
        !rs.is_root(seed.zeta) || k.grading().in_delta_plus_p(seed.zeta))
        fail(SeedVerdict::HypothesesNotMet, "root conditions on beta, gamma, zeta");
    c.zeta_gate = seed.zeta != -seed.beta && seed.zeta != -seed.gamma;
    if (!c.zeta_gate)
        fail(SeedVerdict::HypothesesNotMet, "zeta is opposite to beta or gamma");
    if (!c.reason.empty())
        return c;

    c.kt_checked = true;
    c.kt = check_kruglikov_the(k, seed.omega);
    auto oik = omega_image_kernel(k, seed.omega);
    c.image_dim = oik.image.dim();
    if (!c.kt.image_condition)
        fail(SeedVerdict::NotCertified, "Kruglikov-The image condition");
    if (!c.kt.wedge_condition)
        fail(SeedVerdict::NotCertified, "Kruglikov-The wedge condition");
    if (!c.reason.empty())
        return c;

    c.structure_checked = true;
    DeformedAlgebra d;
    try {
        d = build_deformed_algebra(k, seed.omega);
    } catch (const NotClosed &e) {
        fail(SeedVerdict::NotCertified, std::string("deformed bracket not closed: ") + e.what());
        return c;
    }
    c.k_omega_dim = d.k_omega.dim();
    c.jacobi = d.jacobi;
    c.d_omega_vanishes = d.d_omega_vanishes;
    auto f = analyze_f_omega(k, seed.omega, d);
    c.image_in_b_minus = f.image_in_b_minus;
    c.f_ideal = f.ideal;
    c.f_solvable = f.solvable;
    c.n_omega_dim = f.n_omega.dim();
    if (!c.jacobi)
        fail(SeedVerdict::NotCertified, "deformed bracket violates Jacobi");
    if (!c.d_omega_vanishes)
        fail(SeedVerdict::NotCertified, "d Omega map does not vanish");
    if (!c.image_in_b_minus)
        fail(SeedVerdict::NotCertified, "im(Omega) not inside b-");
    if (!c.f_ideal)
        fail(SeedVerdict::NotCertified, "f_Omega is not an ideal");
    if (!c.f_solvable)
        fail(SeedVerdict::NotCertified, "f_Omega is not solvable");

    if (k.is_split()) {
        bool ok = true;
        for (const auto &w : {seed.beta + seed.gamma, seed.beta + seed.zeta, seed.gamma + seed.zeta})
            if (is_zero(w) || rs.is_root(w))
                ok = false;
        c.corollary = ok; // sufficient criterion only, never gates
    }
    if (c.reason.empty())
        c.verdict = SeedVerdict::HarmonicSeed;
    return c;
}

} // namespace curvtree
