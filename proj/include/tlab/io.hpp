#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tlab/signal.hpp"

namespace tlab::io {

/// Reads the `n,value` CSV format. Rows may come in any order; repeated
/// indices are rejected.
DiscreteSignal read_signal_csv(std::istream& in);
DiscreteSignal read_signal_file(const std::string& path);

/// Writes nonzero entries in increasing n with 17 significant digits, which
/// round-trips every double exactly.
void write_signal_csv(std::ostream& out, const DiscreteSignal& f);
void write_signal_file(const std::string& path, const DiscreteSignal& f);

/// One point per line, comma separated coordinates. Blank lines and lines
/// starting with '#' are skipped, as is a non-numeric header line.
std::vector<std::vector<double>> read_points_csv(std::istream& in);
std::vector<std::vector<double>> read_points_file(const std::string& path);

/// `%.17g` formatting.
std::string format_double(double x);

/// Flat `key = value` text. '#' starts a comment; values are kept as
/// trimmed strings, optionally double-quoted.
using KeyValues = std::map<std::string, std::string>;
KeyValues read_key_values(std::istream& in);
void write_key_values(std::ostream& out, const KeyValues& kv);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace tlab::io
