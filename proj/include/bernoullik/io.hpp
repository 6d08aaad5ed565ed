#ifndef BERNOULLIK_IO_HPP
#define BERNOULLIK_IO_HPP

#include <string>

#include "json.hpp"

#include "bernoullik/abgrp.hpp"
#include "bernoullik/gset.hpp"
#include "bernoullik/ktheory.hpp"
#include "bernoullik/perm.hpp"

namespace bernoullik::io {

using Json = nlohmann::ordered_json;

/// Parses text as JSON; failures become InvalidInput errors.
Json parse(const std::string& text, const std::string& what);
Json read_file(const std::string& path);

/// {"degree": 3, "generators": [[1,0,2], ...]} or with "cycles": [[[0,1]], ...].
PermGroup group_from_json(const Json& j);
Json group_to_json(const PermGroup& g);

/// {"pieces": [{"stabilizer": [generator images], "multiplicity": 2 | "omega"}]}.
GSetSpec gset_from_json(const PermGroup& g, const Json& j);

Json graded_to_json(const GradedAb& a);
GradedAb graded_from_json(const Json& j);

IntMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);

/// {"objects": [graded...], "arrows": [{"source", "target", "deg0", "deg1"}]}.
Diagram diagram_from_json(const Json& j);

Json report_to_json(const KReport& r);
KReport report_from_json(const Json& j);

}  // namespace bernoullik::io

#endif  // BERNOULLIK_IO_HPP
