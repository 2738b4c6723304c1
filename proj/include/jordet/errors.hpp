#pragma once

#include <stdexcept>
#include <string>

namespace jordet {

/// Error hierarchy. Everything user-triggerable derives from Error so the
/// CLI can map it to a single machine-readable error object (exit code 2).
struct Error : std::runtime_error {
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

struct RingRejected : Error {
    explicit RingRejected(const std::string& msg) : Error("ring_rejected", msg) {}
};

struct CapabilityError : Error {
    explicit CapabilityError(const std::string& msg) : Error("capability_error", msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension_mismatch", msg) {}
};

struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& msg) : Error("size_mismatch", msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error("index_out_of_range", msg) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& msg) : Error("not_invertible", msg) {}
};

struct StrategyUnsupported : Error {
    explicit StrategyUnsupported(const std::string& msg) : Error("strategy_unsupported", msg) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& msg) : Error("precondition_failed", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse_error", msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema_error", msg) {}
};

} // namespace jordet
