#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvtree {

enum class Verdict { Pass, Fail, Info };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string &s); // throws ParseError

using Fields = std::vector<std::pair<std::string, std::string>>;

struct Check {
    std::string name;
    std::string tag; // hypothesis tag, or "plumbing"
    Verdict verdict = Verdict::Info;
    Fields witness;
    bool operator==(const Check &) const = default;
};

struct Report {
    std::string command;
    Fields meta;
    std::optional<std::string> timestamp;
    std::vector<Check> checks;
    bool pass = false;
    std::string failed; // first unmet hypothesis when !pass

    Check &add(std::string name, std::string tag, Verdict v, Fields witness = {});
    Check &add(std::string name, std::string tag, bool ok, Fields witness = {});
    void fail(const std::string &why); // records the first failure only
    const Check *find(const std::string &name) const;
    std::string field(const std::string &check, const std::string &key) const; // "" when absent

    std::string to_text() const;
    std::string to_json(int indent = 2) const;
    static Report from_json(const std::string &text); // throws ParseError
    bool operator==(const Report &) const = default;
};

std::string utc_timestamp();

} // namespace curvtree
