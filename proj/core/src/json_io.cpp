#include "cyclineq/json_io.hpp"

#include "cyclineq/errors.hpp"

namespace cyclineq {

Json to_json(const Permutation& sigma) { return Json(sigma.images()); }

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError(ErrorCode::NotABijection, "permutation must be a JSON array");
  std::vector<int> images;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw DomainError(ErrorCode::NotABijection, "permutation entries must be integers");
    images.push_back(e.get<int>());
  }
  return Permutation(images);
}

Json classify_json(const Permutation& sigma, const ExponentVerdict& verdict) {
  Json out;
  out["n"] = sigma.size();
  out["sigma"] = to_json(sigma);
  out["d_plus"] = verdict.d_plus;
  out["d_minus"] = verdict.d_minus;
  out["holds_for"] = "k >= " + std::to_string(verdict.d_plus) + " or k <= -" + std::to_string(verdict.d_minus);
  return out;
}

Json to_json(const DecompositionCertificate& cert) {
  Json out;
  out["n"] = cert.n;
  out["u"] = cert.u;
  out["v"] = cert.v;
  out["alphabet"] = cert.alphabet == Alphabet::A ? "a" : "b";
  out["summands"] = cert.summands;
  out["rounds"] = cert.rounds;
  return out;
}

DecompositionCertificate certificate_from_json(const Json& j) {
  DecompositionCertificate cert;
  try {
    cert.n = j.at("n").get<int>();
    cert.u = j.at("u").get<long long>();
    cert.v = j.at("v").get<long long>();
    const auto alphabet = j.at("alphabet").get<std::string>();
    if (alphabet != "a" && alphabet != "b") {
      throw DomainError(ErrorCode::OutOfDomain, "alphabet must be \"a\" or \"b\"");
    }
    cert.alphabet = alphabet == "a" ? Alphabet::A : Alphabet::B;
    cert.summands = j.at("summands").get<std::vector<std::vector<long long>>>();
    cert.rounds = j.at("rounds").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(ErrorCode::OutOfDomain, std::string("malformed certificate JSON: ") + e.what());
  }
  return cert;
}

Json to_json(const InequalityInstance& instance) {
  Json out;
  out["kind"] = std::string(to_string(instance.kind));
  out["n"] = instance.n;
  if (instance.sigma && instance.kind != InequalityKind::CyclicShift) out["sigma"] = to_json(*instance.sigma);
  if (instance.kind == InequalityKind::CyclicShift) out["p"] = instance.p;
  if (instance.kind != InequalityKind::NesbittClassic) out["k"] = instance.k;
  return out;
}

Json to_json(const GapReport& report) {
  Json out;
  out["instance"] = to_json(report.instance);
  out["x"] = report.x;
  out["lhs"] = report.lhs;
  out["rhs"] = report.rhs;
  out["gap"] = report.gap;
  return out;
}

Json to_json(const CounterexampleReport& report) {
  Json out;
  out["instance"] = to_json(report.instance);
  out["x"] = report.x;
  out["lhs"] = report.lhs;
  out["rhs"] = report.rhs;
  out["gap"] = report.gap;
  out["construction"] = report.construction;
  out["extended_precision"] = report.extended_precision;
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

Json to_json(const ShapiroPrediction& prediction) {
  Json out;
  out["verdict"] = std::string(to_string(prediction.verdict));
  out["constant_rhs"] = prediction.constant_rhs;
  out["reason"] = prediction.reason;
  return out;
}

std::string big_to_string(const BigInt& value) { return value.str(); }

Json to_json(const LucasRow& row) {
  Json out;
  out["n"] = row.n;
  out["P_n_2"] = big_to_string(row.band_count);
  out["two_plus_lucas"] = big_to_string(row.shifted_lucas);
  out["match"] = row.match;
  return out;
}

}  // namespace cyclineq
