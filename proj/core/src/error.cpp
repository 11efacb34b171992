#include "ggv/error.hpp"

namespace ggv {

namespace {

std::string describe(std::size_t offset, const std::string& expected, const std::string& found,
                     std::size_t line) {
  std::string msg;
  if (line > 0) msg += "line " + std::to_string(line) + ", ";
  msg += "offset " + std::to_string(offset) + ": expected " + expected + ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected, std::string found,
                       std::size_t line)
    : Error(describe(offset, expected, found, line)),
      offset_(offset),
      line_(line),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ParseError ParseError::at(std::size_t line, std::size_t column_shift) const {
  return ParseError(offset_ + column_shift, expected_, found_, line);
}

}  // namespace ggv
