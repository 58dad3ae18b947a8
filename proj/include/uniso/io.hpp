#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "uniso/bounds.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/iso_graph.hpp"
#include "uniso/projective_plane.hpp"
#include "uniso/rational.hpp"
#include "uniso/unitals.hpp"

namespace uniso::io {

using nlohmann::json;

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << data;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(what + ": " + e.what());
  }
}

inline json load_json(const std::string& path) { return parse(read_file(path), path); }

// Fractions: num and den as JSON integers when they fit, strings otherwise,
// plus an informational 12-digit decimal.

inline json big_json(const BigInt& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

inline BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

inline json fraction_json(const Rational& r) {
  return {{"num", big_json(r.get_num())}, {"den", big_json(r.get_den())}, {"decimal", to_decimal(r, 12)}};
}

inline Rational fraction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw InvalidInput("malformed fraction");
  const BigInt den = big_from_json(j.at("den"));
  if (den == 0) throw InvalidInput("fraction with zero denominator");
  return make_rational(big_from_json(j.at("num")), den);
}

// ---------------------------------------------------------------------------
// Designs

/// Hash over v and the sorted block list; provenance does not enter.
inline std::string design_hash(const Design& d) {
  std::string s = "v " + std::to_string(d.v()) + "\n";
  for (const Block& blk : d.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) s += (i ? " " : "") + std::to_string(blk[i]);
    s += "\n";
  }
  return sha256_hex(s);
}

inline json params_json(const DesignParams& p) {
  return {{"v", p.v}, {"b", p.b}, {"r", p.r}, {"k", p.k}, {"lambda", p.lambda}};
}

inline json design_json(const Design& d) {
  return {{"v", d.v()},
          {"params", params_json(d.params())},
          {"hash", design_hash(d)},
          {"provenance", d.provenance()},
          {"blocks", d.blocks()}};
}

/// Rebuilds and revalidates a design from JSON.
inline Design design_from_json(const json& j) {
  if (!j.is_object() || !j.contains("v") || !j.contains("blocks")) throw InvalidInput("design JSON needs v and blocks");
  std::vector<Block> blocks;
  std::uint32_t v = 0;
  try {
    v = j.at("v").get<std::uint32_t>();
    blocks = j.at("blocks").get<std::vector<Block>>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed design JSON: ") + e.what());
  }
  Design d(v, std::move(blocks), j.value("provenance", json::object()));
  if (j.contains("hash") && j.at("hash") != design_hash(d)) throw VerificationFailure("design hash mismatch");
  return d;
}

inline Design load_design(const std::string& path) { return design_from_json(load_json(path)); }

// ---------------------------------------------------------------------------
// Planes and graphs

inline json plane_json(const ProjectivePlane& plane) {
  json pts = json::array(), lines = json::array();
  for (const ProjPoint p : plane.points()) pts.push_back(plane.index_triple(p.id));
  for (const ProjLine l : plane.lines()) {
    json on = json::array();
    for (const ProjPoint p : plane.points_on_line(l)) on.push_back(p.id);
    lines.push_back(std::move(on));
  }
  return {{"field", detail::field_json(plane.field())},
          {"order", plane.points_per_line() - 1},
          {"points", std::move(pts)},
          {"lines", std::move(lines)}};
}

inline json graph_json(const IsoGraph& g) {
  json edges = json::array();
  for (std::uint32_t p = 0; p < g.v(); ++p)
    g.point_adjacency(p).for_each([&](std::uint32_t j) { edges.push_back({p, j}); });
  return {{"flavor", to_string(g.flavor())}, {"points", g.v()}, {"blocks", g.b()}, {"edges", std::move(edges)}};
}

/// "p bip v b e" header, then "e point block" with 1-based ids on each side.
inline std::string graph_dimacs(const IsoGraph& g) {
  std::ostringstream out;
  out << "c " << to_string(g.flavor()) << " graph, points 1.." << g.v() << ", blocks 1.." << g.b() << "\n";
  out << "p bip " << g.v() << " " << g.b() << " " << g.num_edges() << "\n";
  for (std::uint32_t p = 0; p < g.v(); ++p)
    g.point_adjacency(p).for_each([&](std::uint32_t j) { out << "e " << p + 1 << " " << j + 1 << "\n"; });
  return out.str();
}

// ---------------------------------------------------------------------------
// Results and reports

inline json subset_json(const VertexSubset& s) { return {{"points", s.points.indices()}, {"blocks", s.blocks.indices()}}; }

inline VertexSubset subset_from_json(const IsoGraph& g, const json& j) {
  VertexSubset s = VertexSubset::empty_for(g);
  try {
    for (auto p : j.at("points").get<std::vector<std::uint32_t>>()) {
      if (p >= g.v() || s.points.test(p)) throw InvalidInput("bad witness point " + std::to_string(p));
      s.points.set(p);
    }
    for (auto b : j.at("blocks").get<std::vector<std::uint32_t>>()) {
      if (b >= g.b() || s.blocks.test(b)) throw InvalidInput("bad witness block " + std::to_string(b));
      s.blocks.set(b);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed witness: ") + e.what());
  }
  return s;
}

inline json iso_json(const IsoGraph& g, const IsoResult& r) {
  const Profile pr = profile(g, r.witness);
  return {{"flavor", to_string(g.flavor())},
          {"method", to_string(r.method)},
          {"ratio", fraction_json(r.ratio)},
          {"size", r.witness.size()},
          {"boundary", pr.x_prime + pr.y_prime},
          {"witness", subset_json(r.witness)}};
}

inline json bound_json(const BoundReport& b) {
  return {{"n", b.n},
          {"floor_c", b.floor_c},
          {"lower", fraction_json(b.lower)},
          {"upper", fraction_json(b.upper)},
          {"m_used", b.m_used},
          {"pinch", b.pinch}};
}

inline json audit_json(const AuditReport& a) {
  json checks = json::array();
  for (const auto& c : a.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"points_checked", c.points_checked}, {"witness", c.witness}});
  return {{"n", a.n}, {"sampled", a.sampled}, {"scope", a.scope}, {"passed", a.passed()}, {"checks", std::move(checks)}};
}

inline json certificate_json(const Design& d, const Certificate& c) {
  const auto& ck = c.checks;
  return {{"design", {{"provenance", c.design_provenance}, {"hash", design_hash(d)}, {"v", d.v()}, {"b", d.b()}}},
          {"n", c.n},
          {"arc", c.arc},
          {"witness", {{"points", c.points}, {"blocks", c.blocks}}},
          {"claimed", fraction_json(c.claimed)},
          {"checks",
           {{"x", ck.x},
            {"n_x", ck.n_x},
            {"g_minus_x", ck.g_minus_x},
            {"padding", ck.padding},
            {"s", ck.s},
            {"n_s", ck.n_s},
            {"n_s_cap", ck.n_s_cap},
            {"arc_ok", ck.arc_ok},
            {"within_half", ck.within_half},
            {"bounds", bound_json(ck.bounds)},
            {"claimed_equals_lower", c.claimed == ck.bounds.lower}}}};
}

struct VerifyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Recomputes a certificate from the design and the stored arc, then checks
/// every stored field and the stored witness ratio against it.
inline VerifyReport verify_certificate(const json& cert, const Design& d) {
  VerifyReport rep;
  auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
  if (!cert.is_object() || !cert.contains("design") || !cert.contains("witness") || !cert.contains("claimed") ||
      !cert.contains("arc")) {
    fail("certificate is missing required fields");
    return rep;
  }
  if (cert["design"].value("hash", std::string()) != design_hash(d)) {
    fail("design hash mismatch");
    return rep;
  }

  // The stored witness must reproduce the claimed value on its own.
  const IsoGraph g(d, Flavor::incidence);
  try {
    const VertexSubset s = subset_from_json(g, cert["witness"]);
    const Rational claimed = fraction_from_json(cert["claimed"]);
    if (s.empty() || !within_half(g, s.size())) {
      fail("witness size out of range");
    } else if (iso_ratio(g, s) != claimed) {
      fail("witness ratio " + to_string(iso_ratio(g, s)) + " != claimed " + to_string(claimed));
    }
  } catch (const InvalidInput& e) {
    fail(e.what());
  }

  // Rebuild from the arc and compare field by field.
  try {
    const Certificate rebuilt = construct_extremal_set(d, cert["arc"].get<std::vector<std::uint32_t>>());
    const json expect = certificate_json(d, rebuilt);
    for (const char* key : {"n", "arc", "witness", "claimed"})
      if (cert.value(key, json()) != expect[key]) fail(std::string("field '") + key + "' does not match recomputation");
    const json stored_checks = cert.value("checks", json::object());
    for (auto it = expect["checks"].begin(); it != expect["checks"].end(); ++it)
      if (stored_checks.value(it.key(), json()) != it.value()) fail("check '" + it.key() + "' does not match recomputation");
    if (cert["design"].value("provenance", json()) != d.provenance()) fail("design provenance mismatch");
  } catch (const std::exception& e) {
    fail(std::string("recomputation failed: ") + e.what());
  }
  return rep;
}

}  // namespace uniso::io
