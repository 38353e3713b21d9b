// CSV emission with a stable schema: first line is the header, numeric cells
// are printed with 9 significant digits, newline is always '\n'.

#ifndef RPL_CSV_HPP
#define RPL_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace rpl {

std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  // Mixed row for label cells (for example robc summary footers).
  void raw_row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::string path_;
};

}  // namespace rpl

#endif  // RPL_CSV_HPP
