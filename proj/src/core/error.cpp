#include "error.hpp"

namespace skybus {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NegativeFrequency: return "NegativeFrequency";
        case ErrorCode::DriveCondition: return "DriveCondition";
        case ErrorCode::StepFailure: return "StepFailure";
        case ErrorCode::StepInstability: return "StepInstability";
        case ErrorCode::NonUniformGrid: return "NonUniformGrid";
        case ErrorCode::MultiPeak: return "MultiPeak";
    }
    return "Unknown";
}

}  // namespace skybus
