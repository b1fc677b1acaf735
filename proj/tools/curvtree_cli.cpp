#include "curvtree/commands.hpp"
#include "curvtree/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace curvtree;

namespace {

struct Options {
    std::string algebra, cross = "1", fixture, seed;
    bool json = false, no_timestamp = false;
    unsigned parallel = 1;
};

void common(CLI::App *app, Options &o, bool seeds) {
    app->add_option("--algebra", o.algebra, "sl:M, qc:M,N or file:PATH");
    app->add_option("--cross", o.cross, "crossed simple roots, 1-based (default 1)");
    if (seeds) {
        app->add_option("--fixture", o.fixture, "fixture name or path to a fixture file");
        app->add_option("--seed", o.seed, "BETA,GAMMA,ZETA[:A^B>C*coef;...]");
    }
    app->add_flag("--json", o.json, "structured output");
    app->add_option("--parallel", o.parallel, "worker threads")->check(CLI::Range(1u, 256u));
    app->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
}

int emit(Report r, const Options &o) {
    if (!o.no_timestamp)
        r.timestamp = utc_timestamp();
    std::cout << (o.json ? r.to_json() : r.to_text());
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact certification of harmonic curvature seeds on parabolic geometries"};
    app.require_subcommand(1);
    Options o;
    auto *enumerate = app.add_subcommand("enumerate", "list lowest weight harmonic seed candidates");
    auto *certify = app.add_subcommand("certify", "certify a fixture or an inline seed");
    auto *audit = app.add_subcommand("audit", "run structural property suites");
    common(enumerate, o, false);
    common(certify, o, true);
    common(audit, o, false);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    try {
        if (certify->parsed()) {
            if (!o.fixture.empty() == !o.seed.empty())
                throw ParseError("certify needs exactly one of --fixture and --seed", 0);
            if (!o.fixture.empty())
                return emit(cmd_certify(find_fixture(o.fixture)), o);
            if (o.algebra.empty())
                throw ParseError("--seed needs --algebra", 0);
            return emit(cmd_certify_inline(o.algebra, parse_cross(o.cross), o.seed, o.parallel), o);
        }
        if (o.algebra.empty())
            throw ParseError("--algebra is required", 0);
        if (enumerate->parsed())
            return emit(cmd_enumerate(o.algebra, parse_cross(o.cross), o.parallel), o);
        return emit(cmd_audit(o.algebra, parse_cross(o.cross)), o);
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
