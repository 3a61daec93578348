#include "minphase/tap_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minphase {

std::vector<double> read_taps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tap file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::runtime_error("empty tap file: " + path);

  std::vector<double> taps;
  if (text[first] == '{') {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("taps") || !j["taps"].is_array())
      throw std::runtime_error("JSON tap file needs a \"taps\" array: " + path);
    for (const auto& v : j["taps"]) taps.push_back(v.get<double>());
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      size_t consumed = 0;
      double v = std::stod(line.substr(pos), &consumed);
      taps.push_back(v);
    }
  }
  if (taps.empty()) throw std::runtime_error("no taps in file: " + path);
  return taps;
}

FirFilter read_fir(const std::string& path) { return FirFilter(read_taps(path)); }

LinearPhasePrototype read_prototype(const std::string& path) {
  try {
    return LinearPhasePrototype(read_taps(path));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_taps(const std::string& path, const std::vector<double>& taps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write tap file: " + path);
  for (double t : taps) out << format_double(t) << "\n";
}

}  // namespace minphase
