#pragma once

#include <stdexcept>
#include <string>

namespace tas {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SumMismatch : Error { using Error::Error; };
struct EmptyMask : Error { using Error::Error; };
struct GeometryMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NoProposals : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace tas
