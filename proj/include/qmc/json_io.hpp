#pragma once

#include <string>

#include "qmc/classical.hpp"
#include "qmc/dilation.hpp"

// JSON ingestion. Complex scalars are [re, im] pairs, matrices are arrays of
// row arrays. Dilation files carry an explicit factor `ordering`; data stored
// environment-major is permuted to the library's system-major layout on load.

namespace qmc {

// Parse or I/O problems with the input file (CLI exit code 3).
struct ParseError : Error {
  using Error::Error;
};

TensorDilation load_dilation(const std::string& path);
TensorDilation parse_dilation(const std::string& text);

RoadColoring load_road_coloring(const std::string& path);
RoadColoring parse_road_coloring(const std::string& text);

}  // namespace qmc
