#include "curvtree/report.hpp"

#include "curvtree/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <sstream>

namespace curvtree {

using ojson = nlohmann::ordered_json;

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Fail:
        return "FAIL";
    case Verdict::Info:
        return "INFO";
    }
    return "INFO";
}

Verdict parse_verdict(const std::string &s) {
    if (s == "PASS")
        return Verdict::Pass;
    if (s == "FAIL")
        return Verdict::Fail;
    if (s == "INFO")
        return Verdict::Info;
    throw ParseError("unknown verdict \"" + s + "\"", 0);
}

Check &Report::add(std::string name, std::string tag, Verdict v, Fields witness) {
    checks.push_back({std::move(name), std::move(tag), v, std::move(witness)});
    return checks.back();
}

Check &Report::add(std::string name, std::string tag, bool ok, Fields witness) {
    return add(std::move(name), std::move(tag), ok ? Verdict::Pass : Verdict::Fail,
               std::move(witness));
}

void Report::fail(const std::string &why) {
    pass = false;
    if (failed.empty())
        failed = why;
}

const Check *Report::find(const std::string &name) const {
    for (const auto &c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

std::string Report::field(const std::string &check, const std::string &key) const {
    if (const Check *c = find(check))
        for (const auto &[k, v] : c->witness)
            if (k == key)
                return v;
    return "";
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "curvtree " << command << "\n";
    for (const auto &[k, v] : meta)
        out << k << ": " << v << "\n";
    if (timestamp)
        out << "timestamp: " << *timestamp << "\n";
    for (const auto &c : checks) {
        out << "[" << to_string(c.verdict) << "] " << c.name << " (" << c.tag << ")\n";
        for (const auto &[k, v] : c.witness)
            out << "    " << k << ": " << v << "\n";
    }
    out << "result: " << (pass ? "PASS" : "FAIL");
    if (!pass && !failed.empty())
        out << " (" << failed << ")";
    out << "\n";
    return out.str();
}

namespace {

ojson fields_json(const Fields &f) {
    ojson o = ojson::object();
    for (const auto &[k, v] : f)
        o[k] = v;
    return o;
}

Fields json_fields(const ojson &o) {
    Fields f;
    for (auto it = o.begin(); it != o.end(); ++it)
        f.emplace_back(it.key(), it.value().get<std::string>());
    return f;
}

} // namespace

std::string Report::to_json(int indent) const {
    ojson j;
    j["command"] = command;
    j["meta"] = fields_json(meta);
    if (timestamp)
        j["timestamp"] = *timestamp;
    j["checks"] = ojson::array();
    for (const auto &c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"tag", c.tag},
                               {"verdict", to_string(c.verdict)},
                               {"witness", fields_json(c.witness)}});
    j["result"] = pass ? "PASS" : "FAIL";
    if (!failed.empty())
        j["failed"] = failed;
    return j.dump(indent) + "\n";
}

Report Report::from_json(const std::string &text) {
    try {
        ojson j = ojson::parse(text);
        Report r;
        r.command = j.at("command").get<std::string>();
        r.meta = json_fields(j.at("meta"));
        if (j.contains("timestamp"))
            r.timestamp = j["timestamp"].get<std::string>();
        for (const auto &c : j.at("checks"))
            r.checks.push_back({c.at("name").get<std::string>(), c.at("tag").get<std::string>(),
                                parse_verdict(c.at("verdict").get<std::string>()),
                                json_fields(c.at("witness"))});
        r.pass = j.at("result").get<std::string>() == "PASS";
        r.failed = j.value("failed", "");
        return r;
    } catch (const ojson::exception &e) {
        throw ParseError(std::string("report: ") + e.what(), 0);
    }
}

std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace curvtree
