#pragma once

#include <filesystem>
#include <iosfwd>

#include "induced/measures.hpp"

namespace induced {

// Coefficient table CSV:
//   # induced-table v1 support=<lo>,<hi>
//   n,a_n,b_n
//   0,...,...
// Rows carry consecutive n from 0; floats use 17 significant digits.

Custom load_table(const std::filesystem::path& path);
Custom read_table(std::istream& in);

void save_table(const RecurrenceTable& table, Support support,
                const std::filesystem::path& path);
void write_table(const RecurrenceTable& table, Support support, std::ostream& out);

}  // namespace induced
