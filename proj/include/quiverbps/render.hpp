#pragma once

#include <map>
#include <string>

#include "quiverbps/bps.hpp"
#include "quiverbps/half_laurent.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

enum class OutputFormat { JSON, CSV, TABLE };

OutputFormat output_format_from_name(const std::string& name);  // usage_error

// Printed in every output header; static reminder of which variable the
// exponents of the rendered characters live in.
inline const char* convention_label(NilpotencyClass cls) {
    return cls == NilpotencyClass::ALL ? "t^{-1}" : "t";
}

// One polynomial/character attached to a single dimension vector.
std::string render_polynomial(const Quiver& q, const DimVector& d, const std::string& convention,
                              const HalfLaurent& value, OutputFormat format);

// A family of characters indexed by dimension vector (graded dimensions or the
// coefficients of a graded series).  CSV flattens to (d, doubled exponent,
// value) rows; JSON nests exact coefficient triples under each d.
std::string render_graded(const Quiver& q, const std::string& convention,
                          const std::map<DimVector, HalfLaurent>& values, OutputFormat format);

// Extraction report plus the character it was peeled from.
std::string render_extraction(const ExtractionReport& report, const GradedDims& characters,
                              const std::string& convention, OutputFormat format);

}  // namespace qbps
