#pragma once

#include <stdexcept>
#include <string>

namespace relgraph {

// Violated precondition or invariant of a domain object (bad graph, range
// mismatch, non-hereditary set, ...). The CLI maps these to exit code 1.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Malformed external input (JSON shape, rational literal, expression syntax).
// The CLI maps these to exit code 2.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace relgraph
