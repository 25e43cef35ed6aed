/*
   Copyright 2026 The hdgeom Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "hdgeom/common.hpp"
#include "hdgeom/geodesic.hpp"
#include "hdgeom/homology.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hdgeom {

/// 17 significant digits, so every finite double round-trips; infinities print as inf.
std::string format_double(double value);

/// Parses a whole cell; rejects trailing characters.
std::optional<double> parse_double(std::string_view cell);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Rectangular numeric CSV. A header line is written when `header` is nonempty.
void save_matrix(const std::filesystem::path& path, const Matrix& m, const std::vector<std::string>& header = {});

struct CsvOptions
{
   std::optional<std::size_t> expected_cols;
   /// Skip the first line when every cell in it is non-numeric.
   bool detect_header = true;
};

/// Errors name the offending line for ragged rows, non-numeric cells and
/// column-count mismatches.
Matrix load_matrix(const std::filesystem::path& path, const CsvOptions& options = {});

/// Header `dim,birth,death`, `inf` for infinite deaths.
void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& dgm);
PersistenceDiagram load_diagram(const std::filesystem::path& path);

/// Full square or lower triangle (i, j, d rows with j < i).
void save_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& dm, bool lower_triangle = false);

void save_geodesics(const std::filesystem::path& path, const GeodesicMatrix& g);

/// Header `bin_center,mean,std`.
void save_moving_average(const std::filesystem::path& path, const IsometryReport& report);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

} // namespace hdgeom
