#include "locrec/util.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "locrec/domain.hpp"

namespace locrec {

int days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = (unsigned)(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + (int)doe - 719468;
}

void civil_from_days(int z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = (unsigned)(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = (int)yoe + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

std::string format_day(int days_since_epoch) {
    int y;
    unsigned m, d;
    civil_from_days(days_since_epoch, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return (char)std::tolower(c); });
    return s;
}

bool icontains(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return false;
    std::string h = to_lower(haystack), n = to_lower(needle);
    return h.find(n) != std::string::npos;
}

std::optional<int> parse_tz_offset(const std::string& spec) {
    if (spec.empty() || spec == "UTC" || spec == "utc" || spec == "Z")
        return 0;
    if (spec[0] != '+' && spec[0] != '-') return std::nullopt;
    int sign = spec[0] == '-' ? -1 : 1;
    std::string rest = spec.substr(1);
    int hh = 0, mm = 0;
    if (rest.size() == 5 && rest[2] == ':') {
        hh = std::atoi(rest.substr(0, 2).c_str());
        mm = std::atoi(rest.substr(3, 2).c_str());
    } else if (rest.size() == 4) {
        hh = std::atoi(rest.substr(0, 2).c_str());
        mm = std::atoi(rest.substr(2, 2).c_str());
    } else if (rest.size() == 2) {
        hh = std::atoi(rest.c_str());
    } else {
        return std::nullopt;
    }
    if (hh > 14 || mm > 59) return std::nullopt;
    return sign * (hh * 3600 + mm * 60);
}

std::optional<int64_t> parse_timestamp(const std::string& s) {
    if (s.empty()) return std::nullopt;
    // plain epoch seconds
    bool all_digits = s.find_first_not_of("0123456789") == std::string::npos;
    if (all_digits) return std::strtoll(s.c_str(), nullptr, 10);

    int y, mo, d, h = 0, mi = 0;
    double sec = 0;
    int n = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%n", &y, &mo, &d, &n) != 3) return std::nullopt;
    std::string rest = s.substr((size_t)n);
    if (!rest.empty() && (rest[0] == 'T' || rest[0] == ' ')) {
        int n2 = 0;
        if (std::sscanf(rest.c_str() + 1, "%d:%d:%lf%n", &h, &mi, &sec, &n2) != 3)
            return std::nullopt;
        rest = rest.substr(1 + (size_t)n2);
    }
    int offset = 0;
    if (!rest.empty()) {
        auto off = parse_tz_offset(rest);
        if (!off) return std::nullopt;
        offset = *off;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61)
        return std::nullopt;
    int64_t days = days_from_civil(y, (unsigned)mo, (unsigned)d);
    return days * 86400 + h * 3600 + mi * 60 + (int64_t)sec - offset;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // drop trailing CR
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

}  // namespace locrec
