#pragma once

#include <stdexcept>
#include <string>

namespace gbs {

// Base class for all library failures so callers can catch one type.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameter or argument outside the documented domain.
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Quadrature failed to reach the requested tolerance within the configured
// subdivision budget. Carries the best available estimate and its error bound.
class quadrature_error : public error {
public:
    quadrature_error(const std::string& msg, double value, double error_estimate)
        : error(msg), value(value), error_estimate(error_estimate) {}
    double value;
    double error_estimate;
};

// Root bracketing exceeded its expansion cap.
class bracket_error : public error {
public:
    explicit bracket_error(const std::string& msg) : error(msg) {}
};

// Input too small for the requested estimator configuration.
class sample_size_error : public error {
public:
    explicit sample_size_error(const std::string& msg) : error(msg) {}
};

// Hill pivot X'_(n-k) is not positive, so the log-ratio statistic is undefined.
class tail_positivity_error : public error {
public:
    explicit tail_positivity_error(const std::string& msg) : error(msg) {}
};

// Density-at-zero estimate came out zero: the indicator window caught no
// block sums, so the scale estimate is undefined at this bandwidth.
class bandwidth_error : public error {
public:
    explicit bandwidth_error(const std::string& msg) : error(msg) {}
};

// Scaling a law by zero collapses it to a point mass, which is not a member
// of the family.
class degenerate_law_error : public error {
public:
    explicit degenerate_law_error(const std::string& msg) : error(msg) {}
};

// A single replication exceeded the cycle guard; almost always a model whose
// mean damage is effectively zero relative to the threshold.
class runaway_error : public error {
public:
    explicit runaway_error(const std::string& msg) : error(msg) {}
};

// File I/O and parse failures; messages carry the offending line number.
class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

} // namespace gbs
