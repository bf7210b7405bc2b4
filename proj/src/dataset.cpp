#include "sparseclf/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparseclf {

double Dataset::col_dot(int j, std::span<const double> v) const {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += at(i, j) * v[i];
  return acc;
}

bool Dataset::both_classes_present() const {
  bool pos = false, neg = false;
  for (int yi : y) (yi > 0 ? pos : neg) = true;
  return pos && neg;
}

void Dataset::validate() const {
  if (n < 2 || p < 1) throw std::invalid_argument("dataset needs n >= 2 and p >= 1");
  if (x.size() != static_cast<std::size_t>(n) * p || y.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("dataset shape mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature entry");
  for (int yi : y)
    if (yi != 1 && yi != -1) throw std::invalid_argument("labels must be +1 or -1");
}

void standardize_columns(Dataset& d) {
  for (int j = 0; j < d.p; ++j) {
    double mean = 0.0;
    for (int i = 0; i < d.n; ++i) mean += d.at(i, j);
    mean /= d.n;
    double var = 0.0;
    for (int i = 0; i < d.n; ++i) {
      d.at(i, j) -= mean;
      var += d.at(i, j) * d.at(i, j);
    }
    var /= d.n;
    if (var > 0.0) {
      const double inv = 1.0 / std::sqrt(var);
      for (int i = 0; i < d.n; ++i) d.at(i, j) *= inv;
    }
  }
}

static std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "label")
    throw std::runtime_error(path + ": last header column must be \"label\"");
  Dataset d;
  d.p = static_cast<int>(header.size()) - 1;
  d.names.assign(header.begin(), header.end() - 1);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(row) + ": expected " +
                               std::to_string(header.size()) + " cells, got " +
                               std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty())
        throw std::runtime_error(path + ":" + std::to_string(row) + ": missing value in column " +
                                 std::to_string(c + 1));
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[c].size())
        throw std::runtime_error(path + ":" + std::to_string(row) + ": non-numeric cell in column " +
                                 std::to_string(c + 1) + ": \"" + cells[c] + "\"");
      if (c + 1 < cells.size()) {
        d.x.push_back(v);
      } else {
        int yi;
        if (v == 1.0) yi = 1;
        else if (v == -1.0 || v == 0.0) yi = -1;
        else
          throw std::runtime_error(path + ":" + std::to_string(row) +
                                   ": label must be -1, 0 or 1");
        d.y.push_back(yi);
      }
    }
    ++d.n;
  }
  d.validate();
  return d;
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (int j = 0; j < d.p; ++j) {
    if (j < static_cast<int>(d.names.size()) && !d.names[j].empty())
      out << d.names[j];
    else
      out << "x" << j + 1;
    out << ',';
  }
  out << "label\n";
  char buf[32];
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.p; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.at(i, j));
      out << buf << ',';
    }
    out << d.y[i] << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sparseclf
