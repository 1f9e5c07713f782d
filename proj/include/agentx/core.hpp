#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace agentx {

enum class ErrorCode {
    ConfigInvalid,
    InsufficientResources,
    NoSuchNode,
    IllegalTransition,
    InsufficientBaseline,
    NonFinite,
    EmptyWindow,
    OperatorTimeout,
    ModelIncomplete,
    WindowOutOfRange,
    UnknownPeer,
    EmptyCorpus,
    TraceCorrupt,
    InvalidInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

using Tick = std::uint64_t;

struct NodeId {
    std::uint32_t value = 0;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

// Opaque, never reused: rotating a node mints a fresh token.
struct Address {
    std::uint64_t value = 0;
    friend auto operator<=>(const Address&, const Address&) = default;
};

}  // namespace agentx
