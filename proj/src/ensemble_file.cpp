#include "interlace/ensemble_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace interlace {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

[[noreturn]] void invalid(Errc invariant, const std::string& where, const std::string& what) {
  throw Error(Errc::ValidationError,
              std::string(errc_name(invariant)) + ": " + where + ": " + what);
}

const json& field(const json& obj, const char* key) {
  if (!obj.contains(key)) parse_fail("$", std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

HermitianMatrix parse_matrix(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of rows");
  if (v.size() != dim) {
    invalid(Errc::DimensionMismatch, where, std::to_string(v.size()) + " rows, dim is " +
                                                std::to_string(dim));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(d, d);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::string row_path = where + "[" + std::to_string(r) + "]";
    const json& row = v[r];
    if (!row.is_array()) parse_fail(row_path, "expected an array of entries");
    if (row.size() != dim) {
      invalid(Errc::DimensionMismatch, row_path, std::to_string(row.size()) + " entries, dim is " +
                                                     std::to_string(dim));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const std::string entry_path = row_path + "[" + std::to_string(c) + "]";
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2) parse_fail(entry_path, "expected [re, im]");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(number(e[0], entry_path + "[0]"), number(e[1], entry_path + "[1]"));
    }
  }
  try {
    return make_hermitian(m);
  } catch (const Error& e) {
    invalid(e.code(), where, e.what());
  }
}

void require_count(const std::string& where, std::size_t got, std::size_t want) {
  if (got != want) {
    invalid(Errc::DimensionMismatch, where, std::to_string(got) + " entries for " +
                                                std::to_string(want) + " matrices");
  }
}

// -0.0 prints as "-0.0"; normalize so symmetrization never changes the text.
double clean(double v) { return v + 0.0; }

}  // namespace

EnsembleFile parse_ensemble_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!root.is_object()) parse_fail("$", "expected a JSON object");

  EnsembleFile file;
  const json& version = field(root, "schema_version");
  if (!version.is_string()) parse_fail("schema_version", "expected a string");
  file.schema_version = version.get<std::string>();
  if (file.schema_version != kSchemaVersion) {
    invalid(Errc::InvalidArgument, "schema_version",
            "unsupported version '" + file.schema_version + "'");
  }
  const json& dim = field(root, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
    parse_fail("dim", "expected a positive integer");
  }
  file.dim = dim.get<std::size_t>();

  const json& mats = field(root, "matrices");
  if (!mats.is_array()) parse_fail("matrices", "expected an array");
  if (mats.empty()) invalid(Errc::EmptyMatrix, "matrices", "ensemble has no members");
  for (std::size_t i = 0; i < mats.size(); ++i) {
    file.matrices.push_back(parse_matrix(mats[i], file.dim, "matrices[" + std::to_string(i) + "]"));
  }
  const std::size_t m = file.matrices.size();

  if (root.contains("weights")) {
    file.weights = number_list(root["weights"], "weights");
    require_count("weights", file.weights->size(), m);
  }
  if (root.contains("distributions")) {
    const json& dists = root["distributions"];
    if (!dists.is_array()) parse_fail("distributions", "expected an array");
    require_count("distributions", dists.size(), m);
    std::vector<FiniteDistribution> out;
    for (std::size_t i = 0; i < dists.size(); ++i) {
      const std::string where = "distributions[" + std::to_string(i) + "]";
      if (!dists[i].is_object()) parse_fail(where, "expected {values, probs}");
      if (!dists[i].contains("values") || !dists[i].contains("probs")) {
        parse_fail(where, "expected {values, probs}");
      }
      auto values = number_list(dists[i]["values"], where + ".values");
      auto probs = number_list(dists[i]["probs"], where + ".probs");
      try {
        out.emplace_back(std::move(values), std::move(probs));
      } catch (const Error& e) {
        invalid(e.code(), where, e.what());
      }
    }
    file.distributions = std::move(out);
  }
  if (root.contains("proportions")) {
    file.proportions = number_list(root["proportions"], "proportions");
    if (file.proportions->empty()) invalid(Errc::BadProportions, "proportions", "empty list");
  }
  if (root.contains("epsilon_override") && !root["epsilon_override"].is_null()) {
    file.epsilon_override = number(root["epsilon_override"], "epsilon_override");
  }
  return file;
}

EnsembleFile parse_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ensemble_text(buf.str());
}

std::string serialize_ensemble(const EnsembleFile& file) {
  json root = json::object();
  root["schema_version"] = file.schema_version;
  root["dim"] = file.dim;
  json mats = json::array();
  for (const auto& h : file.matrices) {
    json rows = json::array();
    for (std::size_t r = 0; r < h.dim(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < h.dim(); ++c) {
        const Complex v = h(r, c);
        row.push_back(json::array({clean(v.real()), clean(v.imag())}));
      }
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  root["matrices"] = std::move(mats);
  if (file.weights) root["weights"] = *file.weights;
  if (file.distributions) {
    json dists = json::array();
    for (const auto& d : *file.distributions) {
      dists.push_back(json{{"values", d.values()}, {"probs", d.probs()}});
    }
    root["distributions"] = std::move(dists);
  }
  if (file.proportions) root["proportions"] = *file.proportions;
  if (file.epsilon_override) root["epsilon_override"] = *file.epsilon_override;
  return root.dump(2) + "\n";
}

void write_ensemble(const EnsembleFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
  out << serialize_ensemble(file);
}

}  // namespace interlace
