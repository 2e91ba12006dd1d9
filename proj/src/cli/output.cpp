#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "magskin/cli.hpp"

namespace magskin::cli
{

std::string format_double(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0.0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace
{

std::string csv_cell(const Cell &c)
{
  if (const double *d = std::get_if<double>(&c))
  {
    return format_double(*d);
  }
  if (const long long *i = std::get_if<long long>(&c))
  {
    return std::to_string(*i);
  }
  if (const bool *b = std::get_if<bool>(&c))
  {
    return *b ? "true" : "false";
  }
  const std::string &s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char ch : s)
  {
    out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return out + "\"";
}

// Numbers go in as raw %.17g text so JSON and CSV carry identical digits.
std::string json_cell(const Cell &c)
{
  if (const double *d = std::get_if<double>(&c))
  {
    return std::isfinite(*d) ? format_double(*d) : "null";
  }
  if (const long long *i = std::get_if<long long>(&c))
  {
    return std::to_string(*i);
  }
  if (const bool *b = std::get_if<bool>(&c))
  {
    return *b ? "true" : "false";
  }
  return nlohmann::json(std::get<std::string>(c)).dump();
}

std::string json_record(const Table &t, const std::vector<Cell> &row, const std::string &indent)
{
  std::string out = "{\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
  {
    out += indent + "  " + nlohmann::json(t.columns[i]).dump() + ": " + json_cell(row[i]);
    out += i + 1 < t.columns.size() ? ",\n" : "\n";
  }
  return out + indent + "}";
}

}  // namespace

std::string to_csv(const Table &t)
{
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
  {
    out += (i ? "," : "") + t.columns[i];
  }
  out += "\n";
  for (const auto &row : t.rows)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      out += (i ? "," : "") + csv_cell(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table &t)
{
  if (t.single_record && t.rows.size() == 1)
  {
    return json_record(t, t.rows[0], "") + "\n";
  }
  std::string out = "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    out += "  " + json_record(t, t.rows[r], "  ");
    out += r + 1 < t.rows.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

}  // namespace magskin::cli
