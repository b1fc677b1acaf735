#include "curvtree/fixtures.hpp"

#include "curvtree/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace curvtree {

using nlohmann::json;

namespace {

Scalar scalar_of(const json &j) {
    if (j.is_number_integer())
        return Scalar(j.get<long>());
    if (j.is_string())
        return parse_scalar(j.get<std::string>());
    throw ParseError("expected an integer or a \"p/q\" string", 0);
}

Vector tuple_of(const json &j) {
    if (!j.is_array())
        throw ParseError("expected an epsilon-coordinate array", 0);
    Vector v;
    for (const auto &x : j)
        v.push_back(scalar_of(x));
    return v;
}

std::optional<Vector> optional_tuple(const json &j, const char *key) {
    if (!j.contains(key))
        return std::nullopt;
    return tuple_of(j.at(key));
}

std::optional<std::string> optional_string(const json &j, const char *key) {
    if (!j.contains(key))
        return std::nullopt;
    return j.at(key).get<std::string>();
}

} // namespace

std::vector<std::size_t> parse_cross(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad crossing list \"" + text + "\"", 0);
        std::size_t v = std::stoul(part);
        if (v == 0)
            throw ParseError("crossed simple roots are numbered from 1", 0);
        out.push_back(v);
    }
    if (out.empty())
        throw ParseError("empty crossing list", 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> to_positions(const std::vector<std::size_t> &one_based) {
    std::vector<std::size_t> out;
    for (auto v : one_based)
        out.push_back(v - 1);
    return out;
}

Vector basis_vector(const LieAlgebra &g, const std::string &label) {
    const auto &labels = g.labels();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw ParseError("unknown basis label \"" + label + "\"", 0);
    return unit(g.dim(), static_cast<std::size_t>(it - labels.begin()));
}

Fixture parse_fixture(const std::string &json_text, const std::string &origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw ParseError(origin + ": " + e.what(), 0);
    }
    try {
        Fixture f;
        f.name = j.at("name").get<std::string>();
        f.description = j.value("description", "");
        f.algebra = j.at("algebra").get<std::string>();
        for (const auto &c : j.at("cross"))
            f.cross.push_back(c.get<std::size_t>());
        f.beta = tuple_of(j.at("beta"));
        f.gamma = tuple_of(j.at("gamma"));
        f.zeta = tuple_of(j.at("zeta"));
        for (const auto &t : j.at("terms")) {
            const auto &w = t.at("wedge");
            if (!w.is_array() || w.size() != 2)
                throw ParseError("a term needs a two-label wedge", 0);
            f.terms.push_back({w[0].get<std::string>(), w[1].get<std::string>(),
                               t.at("value").get<std::string>(),
                               t.contains("coeff") ? scalar_of(t.at("coeff")) : Scalar(1)});
        }
        if (j.contains("hints")) {
            f.alpha_hint = optional_tuple(j["hints"], "alpha");
            f.nu0_hint = optional_tuple(j["hints"], "nu0");
        }
        if (j.contains("expect")) {
            const auto &e = j["expect"];
            if (e.contains("verdict"))
                f.expect.pass = e["verdict"].get<std::string>() == "PASS";
            f.expect.failed = optional_string(e, "failed");
            f.expect.alpha = optional_tuple(e, "alpha");
            f.expect.nu0 = optional_tuple(e, "nu0");
            f.expect.a0_strategy = optional_string(e, "a0_strategy");
            f.expect.c0_strategy = optional_string(e, "c0_strategy");
            f.expect.c0 = optional_tuple(e, "c0");
            if (e.contains("ratio"))
                f.expect.ratio = scalar_of(e["ratio"]);
        }
        return f;
    } catch (const json::exception &e) {
        throw ParseError(origin + ": " + e.what(), 0);
    } catch (const std::invalid_argument &e) {
        throw ParseError(origin + ": " + e.what(), 0);
    }
}

Fixture load_fixture(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open fixture " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str(), path);
}

std::string fixture_directory() {
    if (const char *env = std::getenv("CURVTREE_FIXTURES"))
        return env;
#ifdef CURVTREE_FIXTURE_DIR
    return CURVTREE_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

std::vector<std::string> list_fixtures() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto &e : std::filesystem::directory_iterator(fixture_directory(), ec))
        if (e.path().extension() == ".json")
            out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

Fixture find_fixture(const std::string &name_or_path) {
    namespace fs = std::filesystem;
    if (name_or_path.ends_with(".json") || name_or_path.find('/') != std::string::npos)
        return load_fixture(name_or_path);
    fs::path p = fs::path(fixture_directory()) / (name_or_path + ".json");
    if (!fs::exists(p))
        throw ParseError("no fixture named \"" + name_or_path + "\" in " + fixture_directory(), 0);
    return load_fixture(p.string());
}

Instance instantiate(const Fixture &f) {
    Instance inst;
    inst.realization = build_from_descriptor(f.algebra);
    const auto &rs = *inst.realization.roots;
    for (auto c : f.cross)
        if (c == 0 || c > rs.simples().size())
            throw ParseError("crossed simple root " + std::to_string(c) + " out of range", 0);
    inst.grading = ParabolicGrading::grade(inst.realization.roots, to_positions(f.cross));
    inst.complex = std::make_shared<const KostantComplex>(inst.grading);
    const auto &g = rs.algebra();
    const std::size_t eps = rs.epsilon().labels.size();
    auto root = [&](const Vector &v, const char *what) {
        if (v.size() != eps)
            throw ParseError(std::string(what) + " needs " + std::to_string(eps) +
                                 " epsilon coordinates",
                             0);
        return rs.from_epsilon(v);
    };
    std::vector<KostantComplex::Term> terms;
    for (const auto &t : f.terms)
        terms.push_back({basis_vector(g, t.beta), basis_vector(g, t.gamma), basis_vector(g, t.zeta),
                         t.coeff});
    inst.seed = make_seed(*inst.complex, root(f.beta, "beta"), root(f.gamma, "gamma"),
                          root(f.zeta, "zeta"), terms);
    if (f.alpha_hint)
        inst.hints.alpha = root(*f.alpha_hint, "alpha hint");
    if (f.nu0_hint)
        inst.hints.nu0 = root(*f.nu0_hint, "nu0 hint");
    return inst;
}

} // namespace curvtree
