#ifndef PFLR_CSV_HPP
#define PFLR_CSV_HPP

#include <iosfwd>
#include <string>

#include "pflr/model.hpp"

namespace pflr {

/// Dataset CSV layout: header `y,z1,...,zp,x@<t0>,...,x@<t_{m-1}>`, one
/// observation per row, LF line endings, values formatted with 17
/// significant digits so doubles round-trip exactly.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Parses a dataset CSV; the grid is recovered from the x@ header columns.
/// Malformed content raises DataError carrying the offending line number.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::string& path);

/// Shortest-exact formatting used across all CSV output.
std::string format_double(double v);

}  // namespace pflr

#endif  // PFLR_CSV_HPP
