#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locrec {

// Civil date <-> days since 1970-01-01 (Hinnant's algorithms).
int days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(int z, int& y, unsigned& m, unsigned& d);

std::string format_day(int days_since_epoch);  // "YYYY-MM-DD"

std::string to_lower(std::string s);
bool icontains(const std::string& haystack, const std::string& needle);

// Fixed-offset timezone: "UTC", "Z", or "+HH:MM"/"-HH:MM"/"+HHMM".
// Returns offset in seconds east of UTC.
std::optional<int> parse_tz_offset(const std::string& spec);

// ISO-8601 "YYYY-MM-DD[Thh:mm:ss[Z|+hh:mm]]" or plain integer epoch seconds.
std::optional<int64_t> parse_timestamp(const std::string& s);

// One CSV record with RFC-4180 double-quote handling. Assumes the record
// does not span lines (our fields never contain raw newlines).
std::vector<std::string> split_csv_row(const std::string& line);
std::string csv_escape(const std::string& field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace locrec
