// ManifoldFile JSON and scan CSV serialization.
//
// Output is canonical: fixed key order and layout, rationals as "p/q"
// strings, floating entries in shortest round-trip decimal with -0 written as
// 0. Parsing accepts "p/q" strings wherever a number is expected.

#pragma once

#include <string>

#include "flatkahler/crystal.hpp"
#include "flatkahler/twistor.hpp"

namespace flatkahler::io {

std::string format_double(double value);

std::string to_json(const crystal::FlatKahlerData& data);
// Throws ParseError on malformed documents, InvalidData on semantically
// impossible generators (e.g. non-unimodular rotations).
crystal::FlatKahlerData from_json(const std::string& text);

crystal::FlatKahlerData read_manifold(const std::string& path);
void write_manifold(const std::string& path, const crystal::FlatKahlerData& data);

std::string scan_csv(const twistor::LocusReport& report);

// Whole-file helpers; throw ParseError on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace flatkahler::io
