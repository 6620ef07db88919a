#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lrgauge/enclosure.hpp"

namespace lrcli {

struct Cell {
  std::string text;
  std::optional<std::string> approx;  // decimal rendering, shown with --approx
};

inline Cell cell(std::string s) { return {std::move(s), std::nullopt}; }
inline Cell cell(const lrgauge::Rational& q) { return {q.str(), q.decimal(12)}; }
inline Cell cell(const lrgauge::Enclosure& e) {
  if (e.is_exact()) return cell(e.lo());
  // outward to 64 fractional bits; still an enclosure, and the cell stays readable
  lrgauge::Enclosure shown(lrgauge::round_down(e.lo(), 64), lrgauge::round_up(e.hi(), 64));
  return {shown.str(), shown.decimal(12)};
}
template <class Int, class = std::enable_if_t<std::is_integral_v<Int>>>
Cell cell(Int v) {
  return {std::to_string(v), std::nullopt};
}

inline Cell verdict(bool ok) { return cell(ok ? "certified" : "not certified"); }

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  // "-" in a check column: nothing asserted on that row
  bool all_certified() const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (columns_[c] != "check") continue;
      for (const auto& row : rows_)
        if (row[c].text != "certified" && row[c].text != "-") return false;
    }
    return true;
  }

  void print(std::ostream& out, bool markdown, bool approx) const {
    // a column gets an _approx twin when any of its cells carries a decimal
    std::vector<bool> twin(columns_.size(), false);
    if (approx)
      for (const auto& row : rows_)
        for (std::size_t c = 0; c < row.size(); ++c) twin[c] = twin[c] || row[c].approx.has_value();
    std::vector<std::string> head;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      head.push_back(columns_[c]);
      if (twin[c]) head.push_back(columns_[c] + "_approx");
    }
    emit(out, head, markdown);
    if (markdown) {
      std::vector<std::string> rule(head.size(), "---");
      emit(out, rule, true);
    }
    for (const auto& row : rows_) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(row[c].text);
        if (twin[c]) line.push_back(row[c].approx.value_or(""));
      }
      emit(out, line, markdown);
    }
  }

 private:
  static void emit(std::ostream& out, const std::vector<std::string>& cells, bool markdown) {
    if (markdown) out << "| ";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << (markdown ? " | " : ",");
      out << cells[i];
    }
    out << (markdown ? " |\n" : "\n");
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace lrcli
