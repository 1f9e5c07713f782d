#include "agentx/core.hpp"

namespace agentx {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::InsufficientResources: return "InsufficientResources";
        case ErrorCode::NoSuchNode: return "NoSuchNode";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::InsufficientBaseline: return "InsufficientBaseline";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::OperatorTimeout: return "OperatorTimeout";
        case ErrorCode::ModelIncomplete: return "ModelIncomplete";
        case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
        case ErrorCode::UnknownPeer: return "UnknownPeer";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::TraceCorrupt: return "TraceCorrupt";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace agentx
