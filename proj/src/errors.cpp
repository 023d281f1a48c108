#include "horonet/errors.hpp"

namespace horonet {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::BoundaryEdge: return "BoundaryEdge";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorCode::NotInHyperboloid: return "NotInHyperboloid";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::DegenerateSeed: return "DegenerateSeed";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NotDelaunay: return "NotDelaunay";
    case ErrorCode::MonodromyObstruction: return "MonodromyObstruction";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::NotShearMatched: return "NotShearMatched";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::NonIntersectingHorospheres: return "NonIntersectingHorospheres";
    case ErrorCode::ZeroArea: return "ZeroArea";
    case ErrorCode::OffsetTooLarge: return "OffsetTooLarge";
    case ErrorCode::FrameUnavailable: return "FrameUnavailable";
    case ErrorCode::NotCMC1: return "NotCMC1";
    case ErrorCode::EtaNotClosed: return "EtaNotClosed";
    case ErrorCode::NotAngleMatched: return "NotAngleMatched";
    case ErrorCode::NotEquidistant: return "NotEquidistant";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::InconsistentLabeling: return "InconsistentLabeling";
    case ErrorCode::PoleInFamily: return "PoleInFamily";
    case ErrorCode::NotDelaunayAtT: return "NotDelaunayAtT";
    case ErrorCode::InfinityInFace: return "InfinityInFace";
    case ErrorCode::FoldOver: return "FoldOver";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::DelaunayViolated: return "DelaunayViolated";
    case ErrorCode::DomainExhausted: return "DomainExhausted";
    case ErrorCode::UnmeasuredNet: return "UnmeasuredNet";
    case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

} // namespace horonet
