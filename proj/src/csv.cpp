#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "polyirs/errors.hpp"
#include "polyirs/harness.hpp"

namespace polyirs {

namespace {

constexpr const char* kHeader = "t,L,trials,failures,undetected,p_f,p_ml,p_e,mean_cond";

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& cell, std::size_t line) {
  T value{};
  const char* end = cell.data() + cell.size();
  auto res = std::from_chars(cell.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw InvalidParameters("line " + std::to_string(line) + ": bad number '" + cell + "'");
  return value;
}

}  // namespace

std::string format_csv(const Report& report) {
  std::ostringstream out;
  for (const auto& note : report.notes) out << "# " << note << '\n';
  out << kHeader << '\n';
  std::vector<const ReportRow*> rows;
  for (const auto& r : report.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* b) {
    return a->layers != b->layers ? a->layers < b->layers : a->t < b->t;
  });
  for (const auto* r : rows) {
    out << r->t << ',' << r->layers << ',' << r->trials << ',' << r->failures << ',' << r->undetected << ','
        << fmt(r->p_f) << ',' << fmt(r->p_ml) << ',' << fmt(r->p_e) << ',';
    if (r->mean_cond) out << fmt(*r->mean_cond);
    out << '\n';
  }
  return out.str();
}

void emit_csv(const Report& report, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << format_csv(report);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

Report parse_csv(const std::string& text) {
  Report report;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      report.notes.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!header) {
      if (line != kHeader) throw InvalidParameters("unexpected CSV header '" + line + "'");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 9) throw InvalidParameters("line " + std::to_string(lineno) + ": expected 9 fields");
    ReportRow row;
    row.t = parse_number<std::size_t>(cells[0], lineno);
    row.layers = parse_number<std::size_t>(cells[1], lineno);
    row.trials = parse_number<std::size_t>(cells[2], lineno);
    row.failures = parse_number<std::size_t>(cells[3], lineno);
    row.undetected = parse_number<std::size_t>(cells[4], lineno);
    row.p_f = parse_number<double>(cells[5], lineno);
    row.p_ml = parse_number<double>(cells[6], lineno);
    row.p_e = parse_number<double>(cells[7], lineno);
    if (!cells[8].empty()) row.mean_cond = parse_number<double>(cells[8], lineno);
    if (row.failures + row.undetected > row.trials)
      throw InvalidParameters("line " + std::to_string(lineno) + ": counters exceed trials");
    row.successes = row.trials - row.failures - row.undetected;
    report.rows.push_back(row);
  }
  if (!header) throw InvalidParameters("missing CSV header");
  return report;
}

}  // namespace polyirs
