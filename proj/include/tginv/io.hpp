#pragma once

// Tensor files and JSON conversion of reports.
//
// A tensor file is a JSON object
//   {"order": t, "leading_dim": m, "trailing_dim": n, "entries_re": [...], "entries_im": [...]}
// with entries in storage order. Numbers are written with 17 significant digits so that
// reading a written file gives back the same bits.

#include <nlohmann/json.hpp>

#include <string>

#include "tginv/idem.hpp"
#include "tginv/ginv.hpp"
#include "tginv/spectra.hpp"
#include "tginv/tensor.hpp"
#include "tginv/verification.hpp"

namespace tginv {

std::string tensor_to_json(const Tensor& t);

/// Throws FormatError naming the first bad field.
Tensor tensor_from_json(const std::string& text);
Tensor tensor_from_json(const nlohmann::ordered_json& doc);

Tensor read_tensor_file(const std::string& path);
void write_tensor_file(const std::string& path, const Tensor& t);

nlohmann::ordered_json to_json(const Complex& z);
nlohmann::ordered_json to_json(const VectorXc& v);
nlohmann::ordered_json to_json(const BranchPolicy& p);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const IdempotenceReport& r);
nlohmann::ordered_json to_json(const EigenPair& p);
nlohmann::ordered_json to_json(const SpectrumReport& r);
nlohmann::ordered_json to_json(const NullChainReport& r);

}  // namespace tginv
