#pragma once

// Calendar dates for the freshness factor. Two textual forms are
// recognized: ISO (2011-03-15) and "March 15, 2011".

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace snipforge {

struct CalendarDate {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const CalendarDate&) const = default;
};

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// civil-days algorithm).
inline std::int64_t days_from_civil(const CalendarDate& d) {
    std::int64_t y = d.year;
    unsigned m = static_cast<unsigned>(d.month);
    unsigned day = static_cast<unsigned>(d.day);
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline std::int64_t days_between(const CalendarDate& from,
                                 const CalendarDate& to) {
    return days_from_civil(to) - days_from_civil(from);
}

inline bool plausible_date(int y, int m, int d) {
    return y >= 1 && y <= 9999 && m >= 1 && m <= 12 && d >= 1 && d <= 31;
}

inline std::optional<CalendarDate> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> int {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    int y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
    if (!plausible_date(y, m, d)) return std::nullopt;
    return CalendarDate{y, m, d};
}

inline int month_from_name(std::string_view name) {
    static const std::array<std::string_view, 12> kMonths = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    std::string lower;
    for (char c : name)
        lower.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(c))));
    for (std::size_t i = 0; i < kMonths.size(); ++i)
        if (lower == kMonths[i]) return static_cast<int>(i) + 1;
    return 0;
}

// Scans free text for date mentions in either recognized form.
inline std::vector<CalendarDate> scan_dates(std::string_view text) {
    std::vector<CalendarDate> out;
    const std::size_t n = text.size();
    auto is_digit = [&](std::size_t i) {
        return i < n && std::isdigit(static_cast<unsigned char>(text[i]));
    };
    auto is_alpha = [&](std::size_t i) {
        return i < n && std::isalpha(static_cast<unsigned char>(text[i]));
    };
    for (std::size_t i = 0; i < n; ++i) {
        // ISO form: not preceded or followed by another digit.
        if (is_digit(i) && (i == 0 || !is_digit(i - 1)) && i + 10 <= n &&
            !is_digit(i + 10)) {
            if (auto d = parse_iso_date(text.substr(i, 10))) {
                out.push_back(*d);
                i += 9;
                continue;
            }
        }
        // "MonthName D, YYYY"
        if (is_alpha(i) && (i == 0 || !is_alpha(i - 1))) {
            std::size_t j = i;
            while (is_alpha(j)) ++j;
            int month = month_from_name(text.substr(i, j - i));
            if (month > 0 && j < n && text[j] == ' ') {
                std::size_t k = j + 1;
                int day = 0, dd = 0;
                while (is_digit(k) && dd < 2) {
                    day = day * 10 + (text[k] - '0');
                    ++k;
                    ++dd;
                }
                if (dd > 0 && k + 1 < n && text[k] == ',' &&
                    text[k + 1] == ' ') {
                    std::size_t y0 = k + 2;
                    int year = 0, yd = 0;
                    std::size_t p = y0;
                    while (is_digit(p) && yd < 4) {
                        year = year * 10 + (text[p] - '0');
                        ++p;
                        ++yd;
                    }
                    if (yd == 4 && !is_digit(p) &&
                        plausible_date(year, month, day)) {
                        out.push_back(CalendarDate{year, month, day});
                        i = p - 1;
                        continue;
                    }
                }
            }
            i = j - 1;
        }
    }
    return out;
}

inline std::string format_date(const CalendarDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace snipforge
