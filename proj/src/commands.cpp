#include "curvtree/commands.hpp"

#include "curvtree/errors.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace curvtree {

Vector epsilon_values(const RestrictedRootSystem &rs, const Vector &h) {
    Vector out;
    for (const auto &e : rs.epsilon().values)
        out.push_back(rs.evaluate(e, h));
    return out;
}

Vector cartan_from_epsilon(const RestrictedRootSystem &rs, const Vector &values) {
    const auto &eps = rs.epsilon().values;
    if (values.size() != eps.size())
        throw Error("expected " + std::to_string(eps.size()) + " epsilon values");
    auto sol = solve_affine(Matrix::from_rows(eps, rs.rank()), values);
    if (!sol)
        throw Error("no element of a has epsilon values " + to_string(values));
    return rs.from_a(sol->particular);
}

std::string render_cartan(const RestrictedRootSystem &rs, const Vector &h) {
    std::string out;
    const auto &labels = rs.epsilon().labels;
    Vector v = epsilon_values(rs, h);
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + labels[i] + "=" + to_string(v[i]);
    return out;
}

std::string render_vector(const LieAlgebra &g, const Vector &x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0)
            continue;
        Scalar a = abs(x[i]);
        if (out.empty())
            out += sgn(x[i]) < 0 ? "-" : "";
        else
            out += sgn(x[i]) < 0 ? " - " : " + ";
        if (a != 1)
            out += to_string(a) + " ";
        out += g.label(i);
    }
    return out.empty() ? "0" : out;
}

namespace {

std::string join_cross(const std::vector<std::size_t> &cross) {
    std::string s;
    for (std::size_t i = 0; i < cross.size(); ++i)
        s += (i ? "," : "") + std::to_string(cross[i]);
    return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &f) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers && w < n; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::shared_ptr<const ParabolicGrading> grade(const Realization &r,
                                              const std::vector<std::size_t> &cross) {
    if (!r.roots)
        throw ParseError("algebra " + r.descriptor + " has no cartan lines, so it cannot be graded", 0);
    for (auto c : cross)
        if (c == 0 || c > r.roots->simples().size())
            throw ParseError("crossed simple root " + std::to_string(c) + " out of range 1.." +
                                 std::to_string(r.roots->simples().size()),
                             0);
    return ParabolicGrading::grade(r.roots, to_positions(cross));
}

Fields seed_fields(const KostantComplex &k, const Seed &s) {
    const auto &rs = k.system();
    return {{"beta", rs.render(s.beta)},
            {"gamma", rs.render(s.gamma)},
            {"zeta", rs.render(s.zeta)},
            {"omega", k.render(s.omega)}};
}

void add_seed_checks(Report &r, const KostantComplex &k, const SeedCertificate &c) {
    const auto &rs = k.system();
    r.add("laplacian", "harmonic", c.laplacian_zero, {{"box omega is zero", yes(c.laplacian_zero)}});
    Fields lw{{"lowest weight", yes(c.lowest_weight)}};
    if (!k.is_split())
        lw.emplace_back("definition", "killed by every negative root space of g0 (non-split form)");
    r.add("lowest-weight", "lowest-weight", c.lowest_weight, lw);
    r.add("homogeneity", "positive-homogeneity", sgn(c.homogeneity) > 0,
          {{"homogeneity", to_string(c.homogeneity)}});
    r.add("zeta-gate", "zeta-not-opposite", c.zeta_gate,
          {{"zeta in {-beta, -gamma}", yes(!c.zeta_gate)}});
    if (!c.kt_checked) {
        r.add("kruglikov-the", "kruglikov-the", Verdict::Info, {{"status", "not reached"}});
    } else {
        Fields f{{"image condition", yes(c.kt.image_condition)},
                 {"wedge condition", yes(c.kt.wedge_condition)},
                 {"dim im(omega)", std::to_string(c.image_dim)}};
        if (c.kt.witness)
            f.emplace_back("witness", render_vector(rs.algebra(), *c.kt.witness));
        r.add("kruglikov-the", "kruglikov-the", c.kt.holds(), f);
    }
    if (!c.structure_checked) {
        r.add("deformed-algebra", "deformed-bracket", Verdict::Info, {{"status", "not reached"}});
    } else {
        r.add("deformed-algebra", "deformed-bracket", c.jacobi && c.d_omega_vanishes,
              {{"dim k_omega", std::to_string(c.k_omega_dim)},
               {"jacobi", yes(c.jacobi)},
               {"d omega vanishes", yes(c.d_omega_vanishes)}});
        r.add("opening", "opening-ideal", c.image_in_b_minus && c.f_ideal && c.f_solvable,
              {{"im(omega) in b-", yes(c.image_in_b_minus)},
               {"f_omega ideal", yes(c.f_ideal)},
               {"f_omega solvable", yes(c.f_solvable)},
               {"dim n_omega", std::to_string(c.n_omega_dim)}});
    }
    if (c.corollary)
        r.add("pairwise-sums", "split-seed-criterion", Verdict::Info,
              {{"no pairwise sum is a root or zero", yes(*c.corollary)}});
    Fields f{{"verdict", to_string(c.verdict)}};
    if (!c.reason.empty())
        f.emplace_back("reason", c.reason);
    r.add("harmonic-seed", "harmonic-seed", c.verdict == SeedVerdict::HarmonicSeed, f);
}

} // namespace

Report certify_instance(const Instance &inst, Fields meta, const FixtureExpectation &expect) {
    const auto &k = *inst.complex;
    const auto &g = k.grading();
    const auto &rs = k.system();
    Report r;
    r.command = "certify";
    r.meta = std::move(meta);
    r.pass = true;
    auto cert = certify_construction(k, inst.seed, inst.hints);
    r.add("seed", "plumbing", Verdict::Info, seed_fields(k, inst.seed));
    add_seed_checks(r, k, cert.seed);
    const Covector w = inst.seed.beta + inst.seed.gamma + inst.seed.zeta;
    if (cert.seed.verdict == SeedVerdict::HarmonicSeed) {
        r.add("weight-not-scaling", "not-scaling", !cert.weight_scaling,
              {{"weight", rs.render(w)},
               {"weight dual", render_cartan(rs, rs.dual(w))},
               {"weight dual central", yes(g.in_z_g0(rs.dual(w)))},
               {"scaling element", yes(cert.weight_scaling)}});
    }
    if (!cert.weight_scaling && cert.seed.verdict == SeedVerdict::HarmonicSeed) {
        const auto &a = cert.a0;
        Fields f;
        if (a.found) {
            f = {{"strategy", a.strategy},
                 {"alpha", rs.render(a.alpha)},
                 {"nu0", rs.render(a.nu0)},
                 {"R", render_cartan(rs, a.r)},
                 {"a0", render_cartan(rs, a.a0)},
                 {"fixed X", render_vector(rs.algebra(), a.fixed_x)}};
        } else {
            f = {{"reason", a.reason}};
        }
        r.add("a0", "essential-element", a.found, f);
        r.add("essential", "essentiality", cert.essential.ok, {{"detail", cert.essential.detail}});
        const auto &c = cert.c0;
        Fields cf;
        if (!c.projection.empty())
            cf = {{"projection", render_cartan(rs, c.projection)},
                  {"ratio", to_string(c.ratio)},
                  {"max pairing", to_string(c.max_pairing)},
                  {"projection accepted", yes(c.projection_accepted)}};
        else
            cf = {{"projection accepted", "no"}};
        if (c.found) {
            cf.emplace_back("strategy", c.strategy);
            cf.emplace_back("c0", render_cartan(rs, c.c0));
        } else {
            cf.emplace_back("reason", c.reason);
        }
        r.add("c0", "shrinking-element", c.found, cf);
        if (cert.holonomy) {
            const auto &h = *cert.holonomy;
            std::string support;
            for (const auto &s : h.support)
                support += (support.empty() ? "" : ", ") + rs.render(s);
            r.add("holonomy", "holonomy", h.ok(),
                  {{"dim", std::to_string(h.hol.dim())},
                   {"support", support},
                   {"closed under g-", yes(h.closed)},
                   {"weights zeta - i beta - j gamma", yes(h.support_ok)},
                   {"transversal to ker(weight)", yes(h.transversal)},
                   {"ad-nilpotent", yes(h.nilpotent)}});
            r.add("distinct", "distinctness", Verdict::Info,
                  {{"ingredients", h.nilpotent && h.transversal ? "nilpotency and transversality hold"
                                                                : "missing"},
                   {"conclusion", "distinct parameters give non-isomorphic quotients (theorem-backed)"}});
        }
    }
    if (!cert.pass)
        r.fail(cert.failed);

    // fixture expectations
    auto expect_check = [&](const std::string &what, bool ok, const std::string &got) {
        r.add("expect " + what, "plumbing", ok, {{"observed", got}});
        if (!ok)
            r.fail("expectation mismatch: " + what);
    };
    if (expect.pass)
        expect_check("verdict", *expect.pass == cert.pass, cert.pass ? "PASS" : "FAIL");
    if (expect.failed)
        expect_check("failed", *expect.failed == cert.failed, cert.failed);
    if (expect.alpha)
        expect_check("alpha", cert.a0.found && cert.a0.alpha == rs.from_epsilon(*expect.alpha),
                     cert.a0.found ? rs.render(cert.a0.alpha) : "none");
    if (expect.nu0)
        expect_check("nu0", cert.a0.found && cert.a0.nu0 == rs.from_epsilon(*expect.nu0),
                     cert.a0.found ? rs.render(cert.a0.nu0) : "none");
    if (expect.a0_strategy)
        expect_check("a0 strategy", cert.a0.strategy == *expect.a0_strategy, cert.a0.strategy);
    if (expect.c0_strategy)
        expect_check("c0 strategy", cert.c0.strategy == *expect.c0_strategy, cert.c0.strategy);
    if (expect.c0)
        expect_check("c0", cert.c0.found && epsilon_values(rs, cert.c0.c0) == *expect.c0,
                     cert.c0.found ? render_cartan(rs, cert.c0.c0) : "none");
    if (expect.ratio)
        expect_check("ratio", cert.c0.ratio == *expect.ratio, to_string(cert.c0.ratio));
    return r;
}

Report cmd_certify(const Fixture &f) {
    Instance inst = instantiate(f);
    return certify_instance(inst,
                            {{"algebra", f.algebra}, {"cross", join_cross(f.cross)}, {"seed", f.name}},
                            f.expect);
}

Instance inline_instance(const std::string &algebra, const std::vector<std::size_t> &cross,
                         const std::string &seed, unsigned parallel) {
    Instance inst;
    inst.realization = build_from_descriptor(algebra);
    inst.grading = grade(inst.realization, cross);
    inst.complex = std::make_shared<const KostantComplex>(inst.grading);
    const auto &rs = *inst.realization.roots;
    const auto &k = *inst.complex;

    auto colon = seed.find(':');
    std::string head = seed.substr(0, colon);
    std::vector<std::string> roots;
    std::stringstream hs(head);
    for (std::string part; std::getline(hs, part, ',');)
        roots.push_back(part);
    if (roots.size() != 3)
        throw ParseError("seed needs BETA,GAMMA,ZETA", 0);
    Covector beta = rs.parse_root(roots[0]), gamma = rs.parse_root(roots[1]),
             zeta = rs.parse_root(roots[2]);

    if (colon == std::string::npos) {
        std::vector<Candidate> hits;
        for (auto &c : k.enumerate_candidates(parallel))
            if (c.zeta == zeta && ((c.beta == beta && c.gamma == gamma) ||
                                   (c.beta == gamma && c.gamma == beta)))
                hits.push_back(std::move(c));
        if (hits.empty())
            throw ParseError("no enumerated seed has weights " + head, 0);
        if (hits.size() > 1)
            throw ParseError("several enumerated seeds have weights " + head + "; list the terms", 0);
        inst.seed = seed_from_candidate(k, hits.front());
        return inst;
    }
    std::vector<KostantComplex::Term> terms;
    std::stringstream ts(seed.substr(colon + 1));
    for (std::string t; std::getline(ts, t, ';');) {
        if (t.empty())
            continue;
        auto caret = t.find('^'), arrow = t.find('>');
        if (caret == std::string::npos || arrow == std::string::npos || arrow < caret)
            throw ParseError("seed term \"" + t + "\" is not A^B>C[*coef]", 0);
        auto star = t.find('*', arrow);
        Scalar coef = 1;
        if (star != std::string::npos) {
            try {
                coef = parse_scalar(t.substr(star + 1));
            } catch (const std::invalid_argument &) {
                throw ParseError("bad coefficient in \"" + t + "\"", 0);
            }
        }
        const auto &g = rs.algebra();
        terms.push_back({basis_vector(g, t.substr(0, caret)),
                         basis_vector(g, t.substr(caret + 1, arrow - caret - 1)),
                         basis_vector(g, t.substr(arrow + 1, star == std::string::npos
                                                                 ? std::string::npos
                                                                 : star - arrow - 1)),
                         coef});
    }
    if (terms.empty())
        throw ParseError("seed lists no terms", 0);
    inst.seed = make_seed(k, beta, gamma, zeta, terms);
    return inst;
}

Report cmd_certify_inline(const std::string &algebra, const std::vector<std::size_t> &cross,
                          const std::string &seed, unsigned parallel) {
    Instance inst = inline_instance(algebra, cross, seed, parallel);
    return certify_instance(inst, {{"algebra", algebra}, {"cross", join_cross(cross)}, {"seed", seed}});
}

Report cmd_enumerate(const std::string &algebra, const std::vector<std::size_t> &cross,
                     unsigned parallel) {
    Realization real = build_from_descriptor(algebra);
    auto gr = grade(real, cross);
    KostantComplex k(gr);
    const auto &rs = *real.roots;
    Report r;
    r.command = "enumerate";
    r.meta = {{"algebra", algebra}, {"cross", join_cross(cross)}, {"split", yes(k.is_split())}};
    r.pass = true;
    auto cands = k.enumerate_candidates(parallel);
    std::vector<SeedCertificate> certs(cands.size());
    std::vector<LemmaCheck> lemmas(cands.size());
    parallel_for(cands.size(), parallel, [&](std::size_t i) {
        const auto &c = cands[i];
        lemmas[i] = k.lemma_assume_check(c.beta, c.gamma, c.zeta, c.chain);
        certs[i] = certify_harmonic_seed(k, seed_from_candidate(k, c));
    });
    std::size_t harmonic = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto &c = cands[i];
        bool seed_ok = certs[i].verdict == SeedVerdict::HarmonicSeed;
        harmonic += seed_ok;
        Covector w = c.beta + c.gamma + c.zeta;
        Fields f{{"beta", rs.render(c.beta)},
                 {"gamma", rs.render(c.gamma)},
                 {"zeta", rs.render(c.zeta)},
                 {"homogeneity", to_string(gr->homogeneity(w))},
                 {"omega", k.render(c.chain)},
                 {"source", c.bbw ? "bbw" : "kernel scan"},
                 {"zeta opposes beta or gamma", yes(c.zeta_opposes)},
                 {"lemma check", lemmas[i].verdict == LemmaVerdict::Passed ? "passed"
                                 : lemmas[i].verdict == LemmaVerdict::Violation
                                     ? "violation: " + lemmas[i].detail
                                     : "hypothesis not met: " + lemmas[i].detail},
                 {"seed verdict", to_string(certs[i].verdict)},
                 {"weight dual is scaling", yes(weight_is_scaling(*gr, w))}};
        if (!seed_ok)
            f.emplace_back("reason", certs[i].reason);
        r.add("candidate " + std::to_string(i + 1), "harmonic-seed",
              seed_ok ? Verdict::Pass : Verdict::Info, f);
        if (lemmas[i].verdict == LemmaVerdict::Violation)
            r.fail("lemma check violated by candidate " + std::to_string(i + 1));
    }
    r.add("summary", "plumbing", Verdict::Info,
          {{"candidates", std::to_string(cands.size())}, {"harmonic seeds", std::to_string(harmonic)}});
    return r;
}

Report cmd_audit(const std::string &algebra, const std::vector<std::size_t> &cross,
                 const AuditOptions &opt) {
    Report r;
    r.command = "audit";
    r.meta = {{"algebra", algebra}, {"cross", join_cross(cross)}};
    r.pass = true;
    Realization real;
    try {
        real = build_from_descriptor(algebra);
    } catch (const JacobiViolation &e) {
        r.add("jacobi", "lie-algebra", false,
              {{"witness", "(" + std::to_string(e.i() + 1) + ", " + std::to_string(e.j() + 1) + ", " +
                               std::to_string(e.k() + 1) + ")"},
               {"detail", e.what()}});
        r.fail("Jacobi identity fails");
        return r;
    }
    const auto &g = *real.algebra;
    const std::size_t n = g.dim();
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    auto random_vector = [&] {
        Vector v = zeros(n);
        for (int t = 0; t < 3; ++t)
            v[idx(rng)] += coef(rng);
        return v;
    };

    std::vector<SparseVector> table;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table.push_back(g.bracket_basis(i, j));
    auto jw = jacobi_witness(table, n);
    Fields jf{{"basis triples", std::to_string(n * n * n)}};
    if (jw)
        jf.emplace_back("witness", g.label((*jw)[0]) + ", " + g.label((*jw)[1]) + ", " + g.label((*jw)[2]));
    r.add("jacobi", "lie-algebra", !jw, jf);
    if (jw)
        r.fail("Jacobi identity fails");

    std::size_t bad = 0;
    for (std::size_t t = 0; t < opt.killing_triples; ++t) {
        Vector x = random_vector(), y = random_vector(), z = random_vector();
        if (g.killing_form(g.bracket(x, y), z) + g.killing_form(y, g.bracket(x, z)) != 0)
            ++bad;
    }
    r.add("killing-invariance", "killing-form", bad == 0,
          {{"random triples", std::to_string(opt.killing_triples)}, {"failures", std::to_string(bad)}});
    if (bad)
        r.fail("Killing form is not ad-invariant");

    bad = 0;
    if (g.is_semisimple())
        for (std::size_t t = 0; t < opt.dual_covectors; ++t) {
            Vector psi = random_vector();
            if (g.killing_lower(g.killing_dual(psi)) != psi)
                ++bad;
        }
    r.add("killing-dual", "killing-form", g.is_semisimple() && bad == 0,
          {{"random covectors", std::to_string(opt.dual_covectors)}, {"failures", std::to_string(bad)}});
    if (!g.is_semisimple() || bad)
        r.fail("Killing duality fails");

    if (!real.roots) {
        r.add("grading", "grading", Verdict::Info, {{"status", "skipped: no cartan lines"}});
        return r;
    }
    auto gr = grade(real, cross);
    for (const auto &line : audit_grading(*gr)) {
        Fields f;
        if (!line.detail.empty())
            f.emplace_back("detail", line.detail);
        r.add("grading: " + line.name, "grading", line.pass, f);
        if (!line.pass)
            r.fail("grading audit: " + line.name);
    }

    KostantComplex k(gr);
    std::size_t dd = 0, ss = 0;
    for (int deg = 0; deg <= 1; ++deg)
        for (std::size_t s = 0; s < opt.chains_per_degree; ++s)
            if (!k.differential(k.differential(k.random_chain(deg, opt.seed + s))).is_zero())
                ++dd;
    for (int deg = 2; deg <= 3; ++deg)
        for (std::size_t s = 0; s < opt.chains_per_degree; ++s)
            if (!k.codifferential(k.codifferential(k.random_chain(deg, opt.seed + s))).is_zero())
                ++ss;
    r.add("d-squared", "complex", dd == 0,
          {{"random chains per degree", std::to_string(opt.chains_per_degree)},
           {"failures", std::to_string(dd)}});
    r.add("dstar-squared", "complex", ss == 0,
          {{"random chains per degree", std::to_string(opt.chains_per_degree)},
           {"failures", std::to_string(ss)}});
    if (dd)
        r.fail("d o d is not zero");
    if (ss)
        r.fail("d* o d* is not zero");

    if (opt.hodge)
        for (int h : k.homogeneities(2)) {
            std::string name = "hodge degree 2 homogeneity " + std::to_string(h);
            try {
                auto b = k.hodge_audit(2, h);
                r.add(name, "hodge", true,
                      {{"dim", std::to_string(b.dim)},
                       {"im d", std::to_string(b.im_d)},
                       {"ker box", std::to_string(b.ker_box)},
                       {"im d*", std::to_string(b.im_dstar)}});
            } catch (const AuditFailure &e) {
                r.add(name, "hodge", false, {{"detail", e.what()}});
                r.fail(name);
            }
        }
    return r;
}

} // namespace curvtree
