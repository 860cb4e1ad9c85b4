#include "lexalign/csv.hpp"

#include "lexalign/error.hpp"

namespace lexalign::csv {

std::optional<Record> Reader::next() {
  for (;;) {
    Record rec;
    rec.line = line_;
    std::string field;
    bool in_quotes = false;
    bool quoted = false;
    bool any = false;
    int ch;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
      const char c = static_cast<char>(ch);
      any = true;
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"') {
        if (!field.empty() || quoted) {
          throw ParseError(rec.line, "stray quote inside unquoted field");
        }
        in_quotes = true;
        quoted = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        quoted = false;
      } else if (c == '\r' && in_.peek() == '\n') {
        // handled by the following '\n'
      } else if (c == '\n') {
        ++line_;
        break;
      } else {
        if (quoted) {
          throw ParseError(rec.line, "text after closing quote");
        }
        field.push_back(c);
      }
    }
    if (in_quotes) throw ParseError(rec.line, "unterminated quoted field");
    if (!any) return std::nullopt;
    rec.fields.push_back(std::move(field));
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty() && !quoted;
    if (blank) {
      if (ch == std::char_traits<char>::eof()) return std::nullopt;
      continue;
    }
    return rec;
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace lexalign::csv
