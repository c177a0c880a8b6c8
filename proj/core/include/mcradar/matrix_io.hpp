// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcradar/signal.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

// Shortest decimal that round-trips the double exactly (%.17g with a
// shorter-form check). Used everywhere a double goes into a text artifact.
std::string format_double(double v);

// Dense complex matrix as text: header "rows cols", then one line
// "i j re im" per entry. Round-trips bit-exactly at double precision.
void write_matrix(std::ostream &os, const ComplexMatrix &m);
ComplexMatrix read_matrix(std::istream &is);
void save_matrix(const std::string &path, const ComplexMatrix &m);
ComplexMatrix load_matrix(const std::string &path);

// Partial observation: header "rows cols m", then "delta <value>", then one
// line "i j re im" per observed entry.
void write_observation(std::ostream &os, const PartialObservation &obs);
PartialObservation read_observation(std::istream &is);
void save_observation(const std::string &path, const PartialObservation &obs);
PartialObservation load_observation(const std::string &path);

// Flat "key value" records for reports.
struct KeyValueWriter {
    explicit KeyValueWriter(std::ostream &os) : os_(os) {}
    void field(const std::string &key, double value);
    void field(const std::string &key, int value);
    void field(const std::string &key, const std::string &value);

  private:
    std::ostream &os_;
};

} // namespace mcradar
