#include "swave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swave {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double parse_double(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": bad numeric field '" + s + "'");
  }
}

}  // namespace

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string error_table_csv(const ErrorTable& table) {
  std::string out = "scheme,h,k,component,rmse,stderr,M,status\n";
  for (const auto& r : table.rows) {
    out += r.scheme + ',' + format_full(r.h) + ',' + format_full(r.k) + ',' +
           std::to_string(r.component) + ',';
    if (r.exploded)
      out += ",,";
    else
      out += format_full(r.rmse) + ',' + format_full(r.se) + ',';
    out += std::to_string(r.samples) + ',' + (r.exploded ? "exploded" : "ok") + '\n';
  }
  return out;
}

void write_error_csv(const std::string& path, const ErrorTable& table) {
  write_text(path, error_table_csv(table));
}

ErrorTable read_error_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != "scheme,h,k,component,rmse,stderr,M,status")
    throw std::runtime_error(path + ": missing or unexpected header");
  ErrorTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 8) throw std::runtime_error(path + ": expected 8 fields per row");
    ErrorRow row;
    row.scheme = f[0];
    row.h = parse_double(f[1], path);
    row.k = parse_double(f[2], path);
    row.component = static_cast<int>(parse_double(f[3], path));
    row.exploded = (f[7] == "exploded");
    if (!row.exploded) {
      row.rmse = parse_double(f[4], path);
      row.se = parse_double(f[5], path);
    }
    row.samples = static_cast<int>(parse_double(f[6], path));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string energy_csv(const std::vector<EnergyCurve>& curves) {
  std::string out = "scheme,t,energy,stderr,exact_energy\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      out += c.scheme + ',' + format_full(p.t) + ',' + format_full(p.energy) + ',' +
             format_full(p.se) + ',' + format_full(p.exact_energy) + '\n';
  return out;
}

void write_energy_csv(const std::string& path, const std::vector<EnergyCurve>& curves) {
  write_text(path, energy_csv(curves));
}

std::vector<EnergyCurve> read_energy_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != "scheme,t,energy,stderr,exact_energy")
    throw std::runtime_error(path + ": missing or unexpected header");
  std::vector<EnergyCurve> curves;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 5) throw std::runtime_error(path + ": expected 5 fields per row");
    if (curves.empty() || curves.back().scheme != f[0]) {
      curves.push_back({f[0], {}});
    }
    curves.back().points.push_back({parse_double(f[1], path), parse_double(f[2], path),
                                    parse_double(f[3], path), parse_double(f[4], path)});
  }
  return curves;
}

std::string defect_csv(const std::vector<DefectRow>& rows) {
  std::string out = "k,d1_msq,d1_stderr,d2_msq,d2_stderr\n";
  for (const auto& r : rows)
    out += format_full(r.k) + ',' + format_full(r.d1_msq) + ',' + format_full(r.d1_se) + ',' +
           format_full(r.d2_msq) + ',' + format_full(r.d2_se) + '\n';
  return out;
}

void write_defect_csv(const std::string& path, const std::vector<DefectRow>& rows) {
  write_text(path, defect_csv(rows));
}

}  // namespace swave
