#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wbkin/robot_model.hpp"

#ifndef WBKIN_SOURCE_DIR
#error "tests must be compiled with WBKIN_SOURCE_DIR"
#endif

namespace support {

inline std::string source_dir() { return WBKIN_SOURCE_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("test support: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline wbkin::RobotModel load_bundled_model(const std::string& file) {
  return wbkin::parse_model(read_file(source_dir() + "/models/" + file));
}

inline wbkin::RobotModel planar2r() { return load_bundled_model("planar2r.json"); }
inline wbkin::RobotModel arm6r() { return load_bundled_model("z1_like_6r.json"); }

}  // namespace support
