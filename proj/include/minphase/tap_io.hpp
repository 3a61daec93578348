#pragma once

#include <string>
#include <vector>

#include "minphase/fir.hpp"

namespace minphase {

/// Tap files: plain text with one decimal tap per line ('#' comments and
/// blank lines ignored), or JSON of the form {"taps": [...], "kind": ...}.
std::vector<double> read_taps(const std::string& path);

FirFilter read_fir(const std::string& path);
LinearPhasePrototype read_prototype(const std::string& path);

/// One tap per line at 17 significant digits (doubles round-trip exactly).
void write_taps(const std::string& path, const std::vector<double>& taps);

std::string format_double(double v);  // %.17g

}  // namespace minphase
