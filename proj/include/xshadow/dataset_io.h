// Copyright 2026 The xshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XSHADOW_DATASET_IO_H
#define XSHADOW_DATASET_IO_H

// Line-oriented text format for datasets.
//
//   #n=<int>
//   #type=calibration|tomography
//   #seed=<int>
//   #directions=<label>,<label>,...     (tomography only)
//   <rows>
//
// Calibration rows are a bitstring. Tomography rows are
// "<label>,<label>,... <bitstring>". Bitstrings are left-padded binary with
// qubit n-1 first; setting labels are listed in the same order, so the k-th
// label and the k-th bit character belong to the same qubit.

#include <iosfwd>
#include <string>

#include "xshadow/protocols.h"

namespace xshadow {

void write_calibration(std::ostream& out, const CalibrationDataset& data);
void write_tomography(std::ostream& out, const TomographyDataset& data);

/// Throws std::runtime_error with the line number on malformed input.
CalibrationDataset read_calibration(std::istream& in);
/// Setting labels resolve against `directions`, which must contain every
/// label listed in the file header.
TomographyDataset read_tomography(std::istream& in, const DirectionSet& directions);

/// File wrappers; throw std::runtime_error when the path cannot be opened.
void save_calibration(const std::string& path, const CalibrationDataset& data);
void save_tomography(const std::string& path, const TomographyDataset& data);
CalibrationDataset load_calibration(const std::string& path);
TomographyDataset load_tomography(const std::string& path, const DirectionSet& directions);

/// Reads only the "#n=" header of a dataset file.
int peek_qubit_count(const std::string& path);

}  // namespace xshadow

#endif
