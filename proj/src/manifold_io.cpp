#include "flatkahler/manifold_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flatkahler::io {

using crystal::AffineIsometry;
using crystal::FlatKahlerData;
using json = nlohmann::json;
using ratmath::QVector;
using ratmath::Rational;
using ratmath::RationalMatrix;

namespace {

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) return ratmath::parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) return Rational(static_cast<long>(d));
    throw ParseError(where + ": expected an integer or \"p/q\" string");
  }
  throw ParseError(where + ": expected a number or \"p/q\" string");
}

double double_of(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return ratmath::parse_rational(v.get<std::string>()).get_d();
  throw ParseError(where + ": expected a number or \"p/q\" string");
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

void require_square(const json& m, std::size_t dim, const std::string& where) {
  if (!m.is_array() || m.size() != dim) throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
  for (const auto& row : m)
    if (!row.is_array() || row.size() != dim)
      throw ParseError(where + ": expected " + std::to_string(dim) + " columns per row");
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  if (!std::isfinite(value)) throw InvalidData("cannot serialize a non-finite number");
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string to_json(const FlatKahlerData& data) {
  std::ostringstream os;
  const Eigen::Index dim = data.cplx().rows();
  os << "{\n";
  os << "  \"label\": " << json(data.label()).dump() << ",\n";
  os << "  \"n\": " << data.n() << ",\n";
  os << "  \"cplx\": [";
  for (Eigen::Index i = 0; i < dim; ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (Eigen::Index j = 0; j < dim; ++j) os << (j ? ", " : "") << format_double(data.cplx()(i, j));
    os << "]";
  }
  os << (dim ? "\n  ],\n" : "],\n");
  os << "  \"generators\": [";
  const auto& gens = data.generators();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto& r = gens[g].rotation();
    os << (g ? ",\n" : "\n") << "    {\n      \"rotation\": [";
    for (std::size_t i = 0; i < r.rows(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < r.cols(); ++j) os << (j ? ", " : "") << r(i, j).get_num().get_str();
      os << "]";
    }
    os << "],\n      \"translation\": [";
    const auto& t = gens[g].translation();
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << "\"" << ratmath::to_string(t[i]) << "\"";
    os << "]\n    }";
  }
  os << (gens.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

FlatKahlerData from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    const json& label = field(doc, "label");
    if (!label.is_string()) throw ParseError("\"label\" must be a string");
    const json& n_field = field(doc, "n");
    if (!n_field.is_number_integer() || n_field.get<long>() < 1 || n_field.get<long>() > 64)
      throw ParseError("\"n\" must be a positive integer");
    const int n = n_field.get<int>();
    const auto dim = static_cast<std::size_t>(2 * n);

    const json& cplx_field = field(doc, "cplx");
    require_square(cplx_field, dim, "cplx");
    Mat cplx(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        cplx(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = double_of(cplx_field[i][j], "cplx");

    const json& gens_field = field(doc, "generators");
    if (!gens_field.is_array()) throw ParseError("\"generators\" must be an array");
    std::vector<AffineIsometry> generators;
    for (std::size_t g = 0; g < gens_field.size(); ++g) {
      const std::string where = "generator " + std::to_string(g);
      const json& rot = field(gens_field[g], "rotation");
      require_square(rot, dim, where + " rotation");
      RationalMatrix r(dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r(i, j) = rational_of(rot[i][j], where + " rotation");
      const json& tr = field(gens_field[g], "translation");
      if (!tr.is_array() || tr.size() != dim)
        throw ParseError(where + ": translation must have " + std::to_string(dim) + " entries");
      QVector t;
      for (const auto& x : tr) t.push_back(rational_of(x, where + " translation"));
      generators.emplace_back(std::move(r), std::move(t));
    }
    return FlatKahlerData(label.get<std::string>(), n, std::move(cplx), std::move(generators));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid manifold document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw ParseError("error reading '" + path + "'");
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw ParseError("error writing '" + path + "'");
}

FlatKahlerData read_manifold(const std::string& path) { return from_json(read_file(path)); }

void write_manifold(const std::string& path, const FlatKahlerData& data) { write_file(path, to_json(data)); }

std::string scan_csv(const twistor::LocusReport& report) {
  std::string out = "q_a,q_b,q_c,residual\n";
  for (const auto& s : report.samples) {
    out += format_double(s.q.a) + "," + format_double(s.q.b) + "," + format_double(s.q.c) + "," +
           format_double(s.residual) + "\n";
  }
  out += "# classification=" + twistor::to_string(report.classification) +
         " points=" + std::to_string(report.points.size());
  for (const auto& q : report.points)
    out += " (" + format_double(q.a) + " " + format_double(q.b) + " " + format_double(q.c) + ")";
  out += "\n";
  return out;
}

}  // namespace flatkahler::io
