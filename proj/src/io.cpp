#include "hyperg/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperg/constructions.hpp"

namespace hyperg {

namespace {

using nlohmann::json;

double number_or_rational(const json& v, const char* where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    long long p = 0, q = 0;
    char trailing = 0;
    if (std::sscanf(s.c_str(), "%lld/%lld%c", &p, &q, &trailing) == 2 && q != 0)
      return static_cast<double>(p) / static_cast<double>(q);
    throw HyperError(Errc::BadDocument, std::string(where) + ": bad rational '" + s + "'");
  }
  throw HyperError(Errc::BadDocument, std::string(where) + ": expected number or \"p/q\" string");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FiniteHypergroup parse_hypergroup(const std::string& json_text, double tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw HyperError(Errc::BadDocument, std::string("JSON parse failure: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("constants") ||
      !doc.contains("involution"))
    throw HyperError(Errc::BadDocument, "document needs order, involution, constants");

  const int n = doc["order"].get<int>();
  if (n <= 0 || n > 4096) throw HyperError(Errc::BadDocument, "order out of range");
  StructureTensor t(n);
  const json& c = doc["constants"];
  if (!c.is_array() || static_cast<int>(c.size()) != n)
    throw HyperError(Errc::BadDocument, "constants must be an order^3 array");
  for (int i = 0; i < n; ++i) {
    if (!c[i].is_array() || static_cast<int>(c[i].size()) != n)
      throw HyperError(Errc::BadDocument, "constants must be an order^3 array");
    for (int j = 0; j < n; ++j) {
      if (!c[i][j].is_array() || static_cast<int>(c[i][j].size()) != n)
        throw HyperError(Errc::BadDocument, "constants must be an order^3 array");
      for (int k = 0; k < n; ++k) t.at(i, j, k) = number_or_rational(c[i][j][k], "constants");
    }
  }
  std::vector<int> inv;
  for (const auto& v : doc["involution"]) inv.push_back(v.get<int>());
  std::string name = doc.value("name", std::string{});
  return validate_or_throw(t, inv, std::move(name), ValidateOptions{tol});
}

FiniteHypergroup load_hypergroup(const std::string& path_or_preset, double tol) {
  constexpr const char* kPrefix = "preset:";
  if (path_or_preset.rfind(kPrefix, 0) == 0) return preset(path_or_preset.substr(7));
  std::ifstream in(path_or_preset);
  if (!in) throw HyperError(Errc::Io, "cannot open '" + path_or_preset + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hypergroup(buf.str(), tol);
}

std::string emit_hypergroup(const FiniteHypergroup& k) {
  // hand-rolled writer: nlohmann's float formatting is shortest-round-trip,
  // the canonical form wants fixed 17 significant digits
  const int n = k.order();
  std::string out;
  out += "{\n";
  out += "  \"constants\": [\n";
  for (int i = 0; i < n; ++i) {
    out += "    [";
    for (int j = 0; j < n; ++j) {
      out += (j ? ", [" : "[");
      for (int kk = 0; kk < n; ++kk) {
        if (kk) out += ", ";
        out += fmt17(k.n(i, j, kk));
      }
      out += "]";
    }
    out += (i + 1 < n) ? "],\n" : "]\n";
  }
  out += "  ],\n";
  out += "  \"involution\": [";
  for (int x = 0; x < n; ++x) out += (x ? ", " : "") + std::to_string(k.involution(x));
  out += "],\n";
  out += "  \"name\": \"" + k.name() + "\",\n";
  out += "  \"order\": " + std::to_string(n) + "\n";
  out += "}\n";
  return out;
}

std::string tensor_digest(const FiniteHypergroup& k) {
  std::string blob = std::to_string(k.order());
  blob += ';';
  for (int x = 0; x < k.order(); ++x) blob += std::to_string(k.involution(x)) + ",";
  blob += ';';
  for (double v : k.tensor().constants) blob += fmt17(v) + ",";

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : blob) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

}  // namespace hyperg
