#include "botminer/ingest.hpp"

namespace botminer {

bool CsvReader::next(std::vector<std::string>& row, bool& ok) {
  row.clear();
  ok = true;
  if (first_) {
    first_ = false;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        in_.clear();
        in_.seekg(0);
      }
    }
  }
  if (in_.peek() == std::char_traits<char>::eof()) return false;
  row_line_ = line_;

  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (;;) {
    const int ci = in_.get();
    if (ci == std::char_traits<char>::eof()) {
      if (quoted) ok = false;
      row.push_back(std::move(field));
      return true;
    }
    const char c = static_cast<char>(ci);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in_.peek() == '\n') in_.get();
      ++line_;
      row.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
}

}  // namespace botminer
