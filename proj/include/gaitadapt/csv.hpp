#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace gaitadapt
{

/// Shortest decimal text that parses back to exactly the same double.
std::string formatDouble(double v);

/// Comma-separated line builder; the line is written when finished with end().
class CsvRow
{
public:
  explicit CsvRow(std::ostream & os) : os_(os) {}

  CsvRow & operator<<(double v) { return field(formatDouble(v)); }
  CsvRow & operator<<(int v) { return field(std::to_string(v)); }
  CsvRow & operator<<(std::string_view v) { return field(v); }
  CsvRow & operator<<(const char * v) { return field(v); }
  CsvRow & operator<<(bool v) { return field(v ? "1" : "0"); }

  void end() { os_ << line_ << '\n'; }

private:
  CsvRow & field(std::string_view v)
  {
    if(!first_) line_ += ',';
    line_ += v;
    first_ = false;
    return *this;
  }

  std::ostream & os_;
  std::string line_;
  bool first_ = true;
};

} // namespace gaitadapt
