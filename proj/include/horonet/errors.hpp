#pragma once

#include <stdexcept>
#include <string>

namespace horonet {

enum class ErrorCode {
    NotADisk = 1,
    NonManifoldEdge,
    InconsistentOrientation,
    EmptyRegion,
    BoundaryVertex,
    BoundaryEdge,
    DegenerateTriple,
    CoincidentPoints,
    NonpositiveRadius,
    NotInHyperboloid,
    DegenerateFace,
    DegenerateSeed,
    ClosureViolation,
    NotDelaunay,
    MonodromyObstruction,
    MeshMismatch,
    CriticalPoint,
    NotShearMatched,
    LiftFailed,
    NonIntersectingHorospheres,
    ZeroArea,
    OffsetTooLarge,
    FrameUnavailable,
    NotCMC1,
    EtaNotClosed,
    NotAngleMatched,
    NotEquidistant,
    TooSmall,
    InconsistentLabeling,
    PoleInFamily,
    NotDelaunayAtT,
    InfinityInFace,
    FoldOver,
    NewtonDiverged,
    DelaunayViolated,
    DomainExhausted,
    UnmeasuredNet,
    BadInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

} // namespace horonet
