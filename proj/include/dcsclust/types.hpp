#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcsclust {

/// One observed series of a panel: an identifier plus its ordered values.
struct ReturnSeries {
    std::string id;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Base error carrying a short machine-parsable code next to the message.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

/// A caller-supplied argument is out of range or inconsistent.
class ArgumentError : public Error {
  public:
    explicit ArgumentError(const std::string& msg) : Error("argument", msg) {}
};

/// A distribution parameter vector violates its family's domain.
class ParamDomainError : public Error {
  public:
    explicit ParamDomainError(const std::string& msg) : Error("param_domain", msg) {}
};

/// A series is unusable for the requested computation (constant, too short, ...).
class DegenerateSeriesError : public Error {
  public:
    explicit DegenerateSeriesError(const std::string& msg) : Error("degenerate_series", msg) {}
};

/// Information matrix could not be inverted / rooted reliably.
class ScalingError : public Error {
  public:
    ScalingError(const std::string& msg, double condition)
        : Error("scaling", msg), condition_(condition) {}
    double condition() const { return condition_; }

  private:
    double condition_;
};

/// Recursion left the parameter domain; index() is the 1-based time step.
class FilterError : public Error {
  public:
    FilterError(const std::string& msg, std::size_t t) : Error("filter", msg), t_(t) {}
    std::size_t index() const { return t_; }

  private:
    std::size_t t_;
};

/// Estimation could not start (invalid or non-finite likelihood at the init).
class InitError : public Error {
  public:
    explicit InitError(const std::string& msg) : Error("init", msg) {}
};

/// A fuzzy cluster lost all mass during an update.
class EmptyClusterError : public Error {
  public:
    explicit EmptyClusterError(const std::string& msg) : Error("empty_cluster", msg) {}
};

/// No clustering restart produced a usable solution.
class ClusteringError : public Error {
  public:
    explicit ClusteringError(const std::string& msg) : Error("cluster_failure", msg) {}
};

/// Input file could not be parsed into a valid panel.
class IngestError : public Error {
  public:
    explicit IngestError(const std::string& msg) : Error("ingest", msg) {}
};

/// Monte-Carlo study violated its own health checks (e.g. redraw budget).
class HarnessError : public Error {
  public:
    explicit HarnessError(const std::string& msg) : Error("harness", msg) {}
};

/// API misuse that is detectable at the call boundary.
class UsageError : public Error {
  public:
    explicit UsageError(const std::string& msg) : Error("usage", msg) {}
};

/// Throws DegenerateSeriesError unless all values are finite and n >= min_len.
void validate_series(const ReturnSeries& s, std::size_t min_len = 1);

}  // namespace dcsclust
