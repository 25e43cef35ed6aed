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

#include "hdgeom/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace hdgeom {

namespace {

std::vector<std::string_view> split_cells(std::string_view line)
{
   std::vector<std::string_view> cells;
   std::size_t start = 0;
   while (true)
   {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos)
      {
         cells.push_back(line.substr(start));
         return cells;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
   }
}

std::string_view trim(std::string_view s)
{
   while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
   {
      s.remove_prefix(1);
   }
   while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
   {
      s.remove_suffix(1);
   }
   return s;
}

std::string where(const std::filesystem::path& path, std::size_t line)
{
   return path.string() + ":" + std::to_string(line);
}

} // namespace

std::string format_double(double value)
{
   if (value == kInfinity)
   {
      return "inf";
   }
   if (value == -kInfinity)
   {
      return "-inf";
   }
   std::array<char, 64> buf{};
   const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
   return std::string(buf.data(), result.ptr);
}

std::optional<double> parse_double(std::string_view cell)
{
   cell = trim(cell);
   if (cell == "inf" || cell == "+inf")
   {
      return kInfinity;
   }
   if (cell == "-inf")
   {
      return -kInfinity;
   }
   if (!cell.empty() && cell.front() == '+')
   {
      cell.remove_prefix(1);
   }
   double value = 0.0;
   const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
   if (cell.empty() || result.ec != std::errc() || result.ptr != cell.data() + cell.size() || std::isnan(value))
   {
      return std::nullopt;
   }
   return value;
}

void write_text(const std::filesystem::path& path, const std::string& content)
{
   if (path.has_parent_path())
   {
      std::error_code ec;
      std::filesystem::create_directories(path.parent_path(), ec);
      if (ec)
      {
         throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
      }
   }
   std::ofstream out(path, std::ios::binary | std::ios::trunc);
   if (!out)
   {
      throw IoError("cannot open " + path.string() + " for writing");
   }
   out.write(content.data(), static_cast<std::streamsize>(content.size()));
   if (!out)
   {
      throw IoError("write failed: " + path.string());
   }
}

std::string read_text(const std::filesystem::path& path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in)
   {
      throw IoError("cannot open " + path.string());
   }
   std::ostringstream ss;
   ss << in.rdbuf();
   return ss.str();
}

void save_matrix(const std::filesystem::path& path, const Matrix& m, const std::vector<std::string>& header)
{
   std::string out;
   if (!header.empty())
   {
      require(header.size() == static_cast<std::size_t>(m.cols()), "save_matrix: header width mismatch");
      for (std::size_t c = 0; c < header.size(); ++c)
      {
         out += (c ? "," : "") + header[c];
      }
      out += '\n';
   }
   for (Eigen::Index i = 0; i < m.rows(); ++i)
   {
      for (Eigen::Index j = 0; j < m.cols(); ++j)
      {
         if (j)
         {
            out += ',';
         }
         out += format_double(m(i, j));
      }
      out += '\n';
   }
   write_text(path, out);
}

Matrix load_matrix(const std::filesystem::path& path, const CsvOptions& options)
{
   const std::string text = read_text(path);
   std::vector<std::vector<double>> rows;
   std::size_t width = 0;
   std::size_t line_no = 0;
   std::size_t pos = 0;
   while (pos < text.size())
   {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos)
      {
         end = text.size();
      }
      const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
      pos = end + 1;
      ++line_no;
      if (line.empty())
      {
         continue;
      }
      const auto cells = split_cells(line);
      if (rows.empty() && width == 0 && options.detect_header && line_no == 1)
      {
         bool all_text = true;
         for (const auto cell : cells)
         {
            all_text = all_text && !parse_double(cell).has_value();
         }
         if (all_text)
         {
            width = cells.size();
            continue;
         }
      }
      std::vector<double> row;
      row.reserve(cells.size());
      for (std::size_t c = 0; c < cells.size(); ++c)
      {
         const auto value = parse_double(cells[c]);
         if (!value)
         {
            throw IoError(where(path, line_no) + ": non-numeric cell " + std::to_string(c + 1) + " '" +
                          std::string(trim(cells[c])) + "'");
         }
         row.push_back(*value);
      }
      if (width == 0)
      {
         width = row.size();
      }
      if (row.size() != width)
      {
         throw IoError(where(path, line_no) + ": ragged row with " + std::to_string(row.size()) +
                       " cells, expected " + std::to_string(width));
      }
      if (options.expected_cols && row.size() != *options.expected_cols)
      {
         throw IoError(where(path, line_no) + ": " + std::to_string(row.size()) + " columns, expected " +
                       std::to_string(*options.expected_cols));
      }
      rows.push_back(std::move(row));
   }
   Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.empty() ? 0 : width));
   for (std::size_t i = 0; i < rows.size(); ++i)
   {
      for (std::size_t j = 0; j < width; ++j)
      {
         m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
   }
   return m;
}

void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& dgm)
{
   std::string out = "dim,birth,death\n";
   for (const auto& pair : dgm.pairs)
   {
      out += std::to_string(pair.dim) + "," + format_double(pair.birth) + "," + format_double(pair.death) + "\n";
   }
   write_text(path, out);
}

PersistenceDiagram load_diagram(const std::filesystem::path& path)
{
   const Matrix m = load_matrix(path, CsvOptions{3, true});
   PersistenceDiagram dgm;
   for (Eigen::Index i = 0; i < m.rows(); ++i)
   {
      const double dim = m(i, 0);
      if (dim != 0.0 && dim != 1.0 && dim != 2.0)
      {
         throw IoError(path.string() + ": row " + std::to_string(i + 1) + " has dimension outside 0..2");
      }
      if (!(m(i, 2) >= m(i, 1)) || !std::isfinite(m(i, 1)))
      {
         throw IoError(path.string() + ": row " + std::to_string(i + 1) + " has death < birth");
      }
      dgm.pairs.push_back(PersistencePair{static_cast<int>(dim), m(i, 1), m(i, 2)});
      dgm.max_dim = std::max(dgm.max_dim, static_cast<int>(dim));
   }
   std::sort(dgm.pairs.begin(), dgm.pairs.end());
   return dgm;
}

void save_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& dm, bool lower_triangle)
{
   if (!lower_triangle)
   {
      save_matrix(path, dm.d);
      return;
   }
   std::string out = "i,j,d\n";
   for (Eigen::Index i = 0; i < dm.d.rows(); ++i)
   {
      for (Eigen::Index j = 0; j < i; ++j)
      {
         out += std::to_string(i) + "," + std::to_string(j) + "," + format_double(dm.d(i, j)) + "\n";
      }
   }
   write_text(path, out);
}

void save_geodesics(const std::filesystem::path& path, const GeodesicMatrix& g)
{
   save_matrix(path, g.lengths);
}

void save_moving_average(const std::filesystem::path& path, const IsometryReport& report)
{
   Matrix m(static_cast<Eigen::Index>(report.moving_average.size()), 3);
   for (std::size_t b = 0; b < report.moving_average.size(); ++b)
   {
      const auto& bin = report.moving_average[b];
      m.row(static_cast<Eigen::Index>(b)) << bin.center, bin.mean, bin.std;
   }
   save_matrix(path, m, {"bin_center", "mean", "std"});
}

std::string sha256_file(const std::filesystem::path& path)
{
   const std::string bytes = read_text(path);
   std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
   unsigned int length = 0;
   if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
   {
      throw IoError("SHA-256 failed for " + path.string());
   }
   static constexpr char kHex[] = "0123456789abcdef";
   std::string hex;
   for (unsigned int i = 0; i < length; ++i)
   {
      hex += kHex[digest[i] >> 4];
      hex += kHex[digest[i] & 0xF];
   }
   return hex;
}

} // namespace hdgeom
