#include "blaschke/map_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace blaschke {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw_error(ErrorKind::ParseError, path + ": " + what);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + item.key(), "unknown field");
  }
}

double require_number(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required number");
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double optional_number(const json& j, const std::string& path, const char* key,
                       double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int optional_positive_int(const json& j, const std::string& path, const char* key,
                          int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    fail(path + "." + key, "expected a positive integer");
  }
  return static_cast<int>(v.get<std::int64_t>());
}

Complex parse_complex(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required complex value");
  const json& v = require_object(j.at(key), path + "." + key);
  reject_unknown_keys(v, path + "." + key, {"re", "im"});
  return {require_number(v, path + "." + key, "re"), require_number(v, path + "." + key, "im")};
}

DiskPoint parse_disk_point(const json& j, const std::string& path, const char* key) {
  const Complex c = parse_complex(j, path, key);
  try {
    return DiskPoint::from(c);
  } catch (const Error& e) {
    fail(path + "." + key, e.what());
  }
}

SelfMap parse_node(const json& j, const std::string& path, std::uint64_t seed);

SelfMap parse_blaschke(const json& j, const std::string& path) {
  reject_unknown_keys(j, path, {"type", "zeros", "rotation"});
  if (!j.contains("zeros")) fail(path + ".zeros", "missing required array");
  const json& zeros_json = j.at("zeros");
  if (!zeros_json.is_array() || zeros_json.empty()) {
    fail(path + ".zeros", "expected a non-empty array of zeros");
  }
  std::vector<BlaschkeZero> zeros;
  zeros.reserve(zeros_json.size());
  for (std::size_t i = 0; i < zeros_json.size(); ++i) {
    const std::string zero_path = path + ".zeros[" + std::to_string(i) + "]";
    const json& z = require_object(zeros_json.at(i), zero_path);
    reject_unknown_keys(z, zero_path, {"re", "im", "mult"});
    const double re = require_number(z, zero_path, "re");
    const double im = require_number(z, zero_path, "im");
    const int mult = optional_positive_int(z, zero_path, "mult", 1);
    try {
      zeros.push_back({DiskPoint::from(re, im), mult});
    } catch (const Error& e) {
      fail(zero_path, e.what());
    }
  }
  const double rotation = optional_number(j, path, "rotation", 0.0);
  try {
    return SelfMap::finite_blaschke(std::move(zeros), rotation);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

SelfMap parse_atomic(const json& j, const std::string& path) {
  reject_unknown_keys(j, path, {"type", "atoms"});
  if (!j.contains("atoms")) fail(path + ".atoms", "missing required array");
  const json& atoms_json = j.at("atoms");
  if (!atoms_json.is_array() || atoms_json.empty()) {
    fail(path + ".atoms", "expected a non-empty array of atoms");
  }
  std::vector<SingularAtom> atoms;
  atoms.reserve(atoms_json.size());
  for (std::size_t i = 0; i < atoms_json.size(); ++i) {
    const std::string atom_path = path + ".atoms[" + std::to_string(i) + "]";
    const json& a = require_object(atoms_json.at(i), atom_path);
    reject_unknown_keys(a, atom_path, {"angle", "mass"});
    const double angle = require_number(a, atom_path, "angle");
    const double mass = require_number(a, atom_path, "mass");
    if (!(mass > 0.0)) fail(atom_path + ".mass", "mass must be positive");
    atoms.push_back({BoundaryPoint(angle), mass});
  }
  try {
    return SelfMap::atomic_singular(std::move(atoms));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

SelfMap parse_node(const json& j, const std::string& path, std::uint64_t seed) {
  require_object(j, path);
  if (!j.contains("type")) fail(path + ".type", "missing required string");
  const json& type_json = j.at("type");
  if (!type_json.is_string()) fail(path + ".type", "expected a string");
  const std::string type = type_json.get<std::string>();

  if (type == "identity") {
    reject_unknown_keys(j, path, {"type"});
    return SelfMap::identity();
  }
  if (type == "blaschke") return parse_blaschke(j, path);
  if (type == "automorphism") {
    reject_unknown_keys(j, path, {"type", "a", "rotation"});
    const DiskPoint a = parse_disk_point(j, path, "a");
    return SelfMap::automorphism(a, optional_number(j, path, "rotation", 0.0));
  }
  if (type == "atomic_singular") return parse_atomic(j, path);
  if (type == "affine") {
    reject_unknown_keys(j, path, {"type", "scale", "offset"});
    const Complex scale = parse_complex(j, path, "scale");
    const Complex offset = parse_complex(j, path, "offset");
    try {
      return SelfMap::affine_contraction(scale, offset);
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  if (type == "compose") {
    reject_unknown_keys(j, path, {"type", "outer", "inner"});
    if (!j.contains("outer")) fail(path + ".outer", "missing required map spec");
    if (!j.contains("inner")) fail(path + ".inner", "missing required map spec");
    SelfMap outer = parse_node(j.at("outer"), path + ".outer", seed);
    SelfMap inner = parse_node(j.at("inner"), path + ".inner", seed);
    try {
      return SelfMap::composition(std::move(outer), std::move(inner), seed);
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  fail(path + ".type", "unknown map type \"" + type + "\"");
}

}  // namespace

SelfMap parse_map_spec(std::string_view text, std::uint64_t seed) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw_error(ErrorKind::ParseError, std::string("map spec is not valid JSON: ") + e.what());
  }
  return parse_node(parsed, "$", seed);
}

SelfMap load_map_spec_file(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::ParseError, "cannot open map spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_map_spec(buffer.str(), seed);
}

}  // namespace blaschke
