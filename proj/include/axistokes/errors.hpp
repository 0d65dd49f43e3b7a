#pragma once

#include <stdexcept>
#include <string>

namespace axistokes {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// domain
struct NonSimplePolygon : Error { using Error::Error; };
struct NegativeRadius : Error { using Error::Error; };
struct EmptyAxisContact : Error { using Error::Error; };

// mesh
struct MeshingFailed : Error { using Error::Error; };
struct NonConformingInput : Error { using Error::Error; };
struct NotNested : Error { using Error::Error; };

// grading
struct NoRootFound : Error { using Error::Error; };
struct MissingOnAxisOmega : Error { using Error::Error; };
struct NonPositiveA : Error { using Error::Error; };

// assembly / spaces
struct UnsupportedDegree : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct EmptySpace : Error { using Error::Error; };

// solver
struct SingularSystem : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// norms
struct UnsupportedSpec : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };
struct RegionOutsideNeighborhood : Error { using Error::Error; };

// interpolation
struct DegenerateAssignmentRegion : Error { using Error::Error; };

}  // namespace axistokes
