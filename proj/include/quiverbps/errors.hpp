#pragma once

#include <stdexcept>
#include <string>

namespace qbps {

// Error taxonomy mirrored by the CLI exit codes:
//   check_error      -> exit 1 (a verified identity or cross-check failed)
//   usage_error      -> exit 2 (bad flags, malformed input, violated precondition)
//   resource_error   -> exit 3 (work or memory estimate exceeds the configured cap)
class qbps_error : public std::runtime_error {
public:
    explicit qbps_error(const std::string& msg) : std::runtime_error(msg) {}
};

class check_error : public qbps_error {
public:
    explicit check_error(const std::string& msg) : qbps_error(msg) {}
};

class usage_error : public qbps_error {
public:
    explicit usage_error(const std::string& msg) : qbps_error(msg) {}
};

class resource_error : public qbps_error {
public:
    // `estimate` documents the size that tripped the limit, for the error JSON.
    resource_error(const std::string& msg, double estimate = 0.0)
        : qbps_error(msg), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

}  // namespace qbps
