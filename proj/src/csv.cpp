#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cyclesvd/error.hpp"
#include "cyclesvd/series.hpp"

namespace cyclesvd {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool is_missing_marker(const std::string& field) {
  if (field.empty()) return true;
  const std::string l = lower(field);
  return l == "nan" || l == "na";
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<int> parse_digits(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::size_t resolve_column(const ColumnSelector& sel, const std::vector<std::string>* header,
                           const char* what) {
  if (const auto* idx = std::get_if<std::size_t>(&sel)) return *idx;
  const auto& name = std::get<std::string>(sel);
  if (header == nullptr) {
    throw DataError(std::string(what) + " column '" + name + "' requested but the file has no header");
  }
  const auto it = std::find(header->begin(), header->end(), name);
  if (it == header->end()) throw DataError(std::string(what) + " column '" + name + "' not in header");
  return static_cast<std::size_t>(it - header->begin());
}

struct RawRow {
  std::size_t line = 0;
  std::optional<double> value;  // nullopt = missing
  std::optional<double> time;
};

}  // namespace

std::optional<double> parse_instant(const std::string& raw) {
  const std::string text = trim(raw);
  if (auto v = parse_number(text)) return v;
  // YYYY-MM-DD[ T]HH:MM[:SS[.fff]][Z]
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = parse_digits(std::string_view(text).substr(0, 4));
  const auto mo = parse_digits(std::string_view(text).substr(5, 2));
  const auto d = parse_digits(std::string_view(text).substr(8, 2));
  if (!y || !mo || !d) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*mo)},
                                        std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  double seconds = static_cast<double>(std::chrono::sys_days{ymd}.time_since_epoch().count()) * 86400.0;
  std::string_view rest = std::string_view(text).substr(10);
  if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
  if (rest.empty()) return seconds;
  if (rest.front() != 'T' && rest.front() != ' ') return std::nullopt;
  rest.remove_prefix(1);
  if (rest.size() < 5 || rest[2] != ':') return std::nullopt;
  const auto hh = parse_digits(rest.substr(0, 2));
  const auto mm = parse_digits(rest.substr(3, 2));
  if (!hh || !mm || *hh > 23 || *mm > 59) return std::nullopt;
  seconds += *hh * 3600.0 + *mm * 60.0;
  rest.remove_prefix(5);
  if (!rest.empty()) {
    if (rest.front() != ':') return std::nullopt;
    rest.remove_prefix(1);
    const auto ss = parse_number(rest);
    if (!ss || *ss < 0.0 || *ss >= 61.0) return std::nullopt;
    seconds += *ss;
  }
  return seconds;
}

MissingPolicy parse_missing_policy(const std::string& text) {
  if (text == "error") return MissingPolicy::kError;
  if (text == "interpolate") return MissingPolicy::kInterpolate;
  if (text == "drop-edges") return MissingPolicy::kDropEdges;
  throw InvalidArgument("unknown missing-value policy '" + text +
                        "' (expected error, interpolate or drop-edges)");
}

std::string to_string(MissingPolicy policy) {
  switch (policy) {
    case MissingPolicy::kError: return "error";
    case MissingPolicy::kInterpolate: return "interpolate";
    case MissingPolicy::kDropEdges: return "drop-edges";
  }
  return "error";
}

ColumnSelector parse_column_selector(const std::string& text) {
  const auto idx = parse_digits(text);
  if (idx && *idx >= 0) return static_cast<std::size_t>(*idx);
  return text;
}

CsvLoadResult read_csv(std::istream& in, const CsvOptions& options, const std::string& name) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  // A UTF-8 byte-order mark is not part of the first field.
  if (!lines.empty() && lines.front().rfind("\xEF\xBB\xBF", 0) == 0) lines.front().erase(0, 3);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw DataError("csv input is empty");

  CsvLoadResult result{Series({0.0, 1.0}), false, 0, 0, 0};
  std::vector<std::string> header;
  std::size_t first_data = 0;
  {
    const auto fields = split_fields(lines.front());
    std::size_t probe = 0;
    if (const auto* idx = std::get_if<std::size_t>(&options.value_column)) probe = *idx;
    const bool named = std::holds_alternative<std::string>(options.value_column);
    const bool numeric_first =
        probe < fields.size() && (is_missing_marker(fields[probe]) || parse_number(fields[probe]));
    if (named || !numeric_first) {
      header = fields;
      result.had_header = true;
      first_data = 1;
    }
  }
  const auto* header_ptr = result.had_header ? &header : nullptr;
  const std::size_t value_col = resolve_column(options.value_column, header_ptr, "value");
  std::optional<std::size_t> time_col;
  if (options.time_column) time_col = resolve_column(*options.time_column, header_ptr, "time");

  std::vector<RawRow> rows;
  rows.reserve(lines.size());
  for (std::size_t li = first_data; li < lines.size(); ++li) {
    const std::size_t lineno = li + 1;
    const auto fields = split_fields(lines[li]);
    RawRow row;
    row.line = lineno;
    if (value_col >= fields.size()) {
      // A short row is only a missing value for single-field empty lines.
      if (!(fields.size() == 1 && fields[0].empty())) {
        throw DataError("line " + std::to_string(lineno) + ": no field " + std::to_string(value_col));
      }
    } else if (!is_missing_marker(fields[value_col])) {
      row.value = parse_number(fields[value_col]);
      if (!row.value) {
        throw DataError("line " + std::to_string(lineno) + ": cannot parse '" + fields[value_col] +
                        "' as a number");
      }
    }
    if (time_col) {
      if (*time_col >= fields.size()) {
        throw DataError("line " + std::to_string(lineno) + ": no time field " + std::to_string(*time_col));
      }
      row.time = parse_instant(fields[*time_col]);
      if (!row.time) {
        throw DataError("line " + std::to_string(lineno) + ": cannot parse time '" + fields[*time_col] + "'");
      }
    }
    rows.push_back(row);
  }

  const auto first_valid = std::find_if(rows.begin(), rows.end(), [](const RawRow& r) { return r.value.has_value(); });
  if (first_valid == rows.end()) throw DataError("selected column contains no values");
  const auto last_valid = std::find_if(rows.rbegin(), rows.rend(), [](const RawRow& r) { return r.value.has_value(); });
  std::size_t begin = static_cast<std::size_t>(first_valid - rows.begin());
  std::size_t end = rows.size() - static_cast<std::size_t>(last_valid - rows.rbegin());

  const auto first_missing = [&](std::size_t from, std::size_t to) -> const RawRow* {
    for (std::size_t i = from; i < to; ++i)
      if (!rows[i].value) return &rows[i];
    return nullptr;
  };

  switch (options.missing) {
    case MissingPolicy::kError:
      if (const RawRow* r = first_missing(0, rows.size())) {
        throw DataError("line " + std::to_string(r->line) + ": missing value (policy: error)");
      }
      break;
    case MissingPolicy::kDropEdges:
      if (const RawRow* r = first_missing(begin, end)) {
        throw DataError("line " + std::to_string(r->line) +
                        ": interior missing value cannot be dropped (policy: drop-edges)");
      }
      result.dropped_leading = begin;
      result.dropped_trailing = rows.size() - end;
      break;
    case MissingPolicy::kInterpolate: {
      if (begin > 0 || end < rows.size()) {
        const RawRow& r = begin > 0 ? rows.front() : rows.back();
        throw DataError("line " + std::to_string(r.line) +
                        ": leading/trailing missing values cannot be interpolated");
      }
      std::size_t gaps = 0;
      for (const auto& r : rows) gaps += r.value ? 0 : 1;
      if (static_cast<double>(gaps) > kMaxInterpolatedFraction * static_cast<double>(rows.size())) {
        std::ostringstream msg;
        msg << gaps << " missing values exceed the interpolation cap of "
            << kMaxInterpolatedFraction * 100.0 << "% of " << rows.size() << " rows";
        throw DataError(msg.str());
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].value) continue;
        std::size_t j = i;
        while (!rows[j].value) ++j;
        const double x0 = *rows[i - 1].value;
        const double x1 = *rows[j].value;
        const double span = static_cast<double>(j - (i - 1));
        for (std::size_t k = i; k < j; ++k) {
          rows[k].value = x0 + (x1 - x0) * static_cast<double>(k - (i - 1)) / span;
        }
        result.interpolated += j - i;
        i = j;
      }
      break;
    }
  }

  std::vector<double> values;
  std::vector<double> times;
  for (std::size_t i = begin; i < end; ++i) {
    values.push_back(*rows[i].value);
    if (time_col) times.push_back(*rows[i].time);
  }
  std::optional<std::vector<double>> ts;
  if (time_col) ts = std::move(times);
  std::string series_name = name;
  if (result.had_header && value_col < header.size() && !header[value_col].empty()) series_name = header[value_col];
  result.series = Series(std::move(values), series_name, std::move(ts));
  return result;
}

CsvLoadResult load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_csv(in, options, path.stem().string());
}

}  // namespace cyclesvd
