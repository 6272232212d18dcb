#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "translod/error.hpp"

namespace translod {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("read failed on " + path);
  return std::move(buf).str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw Error("write failed on " + path);
}

}  // namespace translod
