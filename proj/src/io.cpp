#include "tginv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tginv {

namespace {

std::string format_number(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0.0" : "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_array(std::ostringstream& out, const VectorXc& e, bool imag) {
  out << '[';
  for (Index i = 0; i < e.size(); ++i) {
    if (i) out << ", ";
    out << format_number(imag ? e[i].imag() : e[i].real());
  }
  out << ']';
}

std::int64_t read_int(const nlohmann::ordered_json& doc, const char* field) {
  if (!doc.contains(field)) throw FormatError(std::string("tensor file: missing field '") + field + "'");
  const auto& v = doc.at(field);
  if (!v.is_number_integer()) throw FormatError(std::string("tensor file: field '") + field + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> read_numbers(const nlohmann::ordered_json& doc, const char* field, std::size_t expected) {
  if (!doc.contains(field)) throw FormatError(std::string("tensor file: missing field '") + field + "'");
  const auto& v = doc.at(field);
  if (!v.is_array()) throw FormatError(std::string("tensor file: field '") + field + "' must be an array");
  if (v.size() != expected) {
    throw FormatError(std::string("tensor file: field '") + field + "' has " + std::to_string(v.size()) +
                      " entries, expected " + std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw FormatError(std::string("tensor file: field '") + field + "' entry " + std::to_string(i) +
                        " is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

std::string tensor_to_json(const Tensor& t) {
  std::ostringstream out;
  out << "{\n  \"order\": " << t.order() << ",\n  \"leading_dim\": " << t.leading_dim()
      << ",\n  \"trailing_dim\": " << t.trailing_dim() << ",\n  \"entries_re\": ";
  write_array(out, t.entries(), false);
  out << ",\n  \"entries_im\": ";
  write_array(out, t.entries(), true);
  out << "\n}\n";
  return out.str();
}

Tensor tensor_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) throw FormatError("tensor file: top level must be an object");
  const std::int64_t order = read_int(doc, "order");
  const std::int64_t m = read_int(doc, "leading_dim");
  const std::int64_t n = read_int(doc, "trailing_dim");
  if (order < 1) throw FormatError("tensor file: field 'order' must be >= 1");
  if (m < 1) throw FormatError("tensor file: field 'leading_dim' must be >= 1");
  if (order == 1 ? n != 0 : n < 1) {
    throw FormatError(order == 1 ? "tensor file: field 'trailing_dim' must be 0 for order 1"
                                 : "tensor file: field 'trailing_dim' must be >= 1");
  }
  Shape shape = [&] {
    try {
      return Shape(static_cast<int>(order), m, n);
    } catch (const Error& e) {
      throw FormatError(std::string("tensor file: field 'order': ") + e.what());
    }
  }();
  const auto count = static_cast<std::size_t>(shape.entry_count());
  const auto re = read_numbers(doc, "entries_re", count);
  const auto im = read_numbers(doc, "entries_im", count);
  VectorXc e(shape.entry_count());
  for (std::size_t i = 0; i < count; ++i) e[static_cast<Index>(i)] = Complex(re[i], im[i]);
  try {
    return Tensor(shape, std::move(e));
  } catch (const DomainError& err) {
    throw FormatError(std::string("tensor file: field 'entries_re'/'entries_im': ") + err.what());
  }
}

Tensor tensor_from_json(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw FormatError(std::string("tensor file: not valid JSON: ") + e.what());
  }
  return tensor_from_json(doc);
}

Tensor read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open tensor file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return tensor_from_json(text.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_tensor_file(const std::string& path, const Tensor& t) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write tensor file '" + path + "'");
  out << tensor_to_json(t);
}

nlohmann::ordered_json to_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::ordered_json to_json(const VectorXc& v) {
  nlohmann::ordered_json re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return {{"re", re}, {"im", im}};
}

nlohmann::ordered_json to_json(const BranchPolicy& p) { return {{"mode", to_string(p.mode)}, {"cap", p.cap}}; }

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json out = {{"identity", r.label},
                        {"pass", r.pass},
                        {"samples", r.samples_run},
                        {"max_residual", r.max_residual},
                        {"branch_policy", to_json(r.policy)}};
  nlohmann::ordered_json notes = nlohmann::ordered_json::array();
  for (const BranchChoice& b : r.branches) {
    notes.push_back({{"lhs", b.lhs}, {"rhs", b.rhs}, {"lhs_count", b.lhs_count}, {"rhs_count", b.rhs_count}});
  }
  if (r.witness) {
    const Witness& w = *r.witness;
    out["witness"] = {{"sample", w.sample},   {"identity", w.identity}, {"y", to_json(w.y)},
                      {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)},  {"residual", w.residual},
                      {"branch", {{"lhs", w.branch.lhs}, {"rhs", w.branch.rhs}}}};
  }
  out["branch_note"] = notes;
  return out;
}

nlohmann::ordered_json to_json(const IdempotenceReport& r) {
  nlohmann::ordered_json out = to_json(r.check);
  out["claim"] = r.claim;
  out["k"] = r.k;
  return out;
}

nlohmann::ordered_json to_json(const EigenPair& p) {
  return {{"lambda", to_json(p.lambda)}, {"x", to_json(p.x)}, {"residual", p.residual}};
}

nlohmann::ordered_json to_json(const SpectrumReport& r) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array(), bad = nlohmann::ordered_json::array();
  for (const auto& p : r.spectrum) pairs.push_back(to_json(p));
  for (const auto& z : r.violators) bad.push_back(to_json(z));
  return {{"claim", r.claim}, {"k", r.k}, {"pass", r.pass}, {"eigenpairs", pairs}, {"violators", bad}};
}

nlohmann::ordered_json to_json(const NullChainReport& r) {
  nlohmann::ordered_json chains = nlohmann::ordered_json::array();
  for (const auto& c : r.chains) {
    nlohmann::ordered_json j = {{"chain", c.name}, {"evaluated", c.evaluated}, {"value", c.value}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    chains.push_back(j);
  }
  return {{"pass", r.pass}, {"chains", chains}};
}

}  // namespace tginv
