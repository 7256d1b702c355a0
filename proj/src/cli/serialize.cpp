#include "euclid/cli.hpp"

#include <stdexcept>

namespace euclid::cli {
namespace {

Json decimal_list(const std::vector<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_decimal(v));
  return out;
}

[[noreturn]] void schema_error(const std::string& what) {
  throw std::invalid_argument("certificate: " + what);
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return obj.at(key);
}

BigInt decimal_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a decimal string");
  try {
    return parse_decimal(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    schema_error(std::string("field '") + key + "' is not a decimal integer");
  }
}

std::vector<BigInt> decimal_array(const Json& v, const char* key) {
  if (!v.is_array()) schema_error(std::string("field '") + key + "' must be an array");
  std::vector<BigInt> out;
  for (const auto& item : v) {
    if (!item.is_string()) schema_error(std::string("entries of '") + key + "' must be decimal strings");
    try {
      out.push_back(parse_decimal(item.get<std::string>()));
    } catch (const std::invalid_argument&) {
      schema_error(std::string("entry of '") + key + "' is not a decimal integer");
    }
  }
  return out;
}

}  // namespace

Json to_json(const arith::FactorizationResult& result) {
  Json factors = Json::array();
  for (const auto& f : result.factors) factors.push_back(Json::array({to_decimal(f.prime), f.multiplicity}));
  Json out;
  out["n"] = to_decimal(result.input);
  out["factors"] = std::move(factors);
  out["cofactor"] = to_decimal(result.cofactor);
  out["status"] = arith::to_string(result.status);
  return out;
}

Json to_json(const sequences::SequenceRecord& record) {
  Json out;
  out["k"] = record.index;
  out["p"] = to_decimal(record.prime);
  out["witness"] = to_decimal(record.witness_divisor);
  out["N"] = to_decimal(record.step_value);
  if (record.obstruction_symbol) out["obstruction"] = *record.obstruction_symbol;
  return out;
}

Json to_json(const prover::Certificate& certificate) {
  Json steps = Json::array();
  for (const auto& step : certificate.steps) {
    Json s;
    s["I"] = step.subset;
    s["N"] = to_decimal(step.step_value);
    s["p"] = to_decimal(step.prime);
    s["role"] = prover::to_string(step.role);
    s["note"] = prover::to_string(step.note);
    steps.push_back(std::move(s));
  }
  Json out;
  out["seed"] = decimal_list(certificate.seed.primes());
  out["target"] = to_decimal(certificate.target);
  out["steps"] = std::move(steps);
  return out;
}

Json to_json(const verify::CheckRecord& record) {
  Json out;
  out["check"] = record.check;
  if (record.q != 0) out["q"] = record.q;
  if (record.a) out["a"] = *record.a;
  if (record.x) out["x"] = *record.x;
  out["value"] = record.value;
  out["bound"] = record.bound;
  out["pass"] = record.pass;
  if (!record.asserted) out["asserted"] = false;
  return out;
}

prover::Certificate certificate_from_json(const Json& doc) {
  prover::Certificate cert;
  try {
    cert.seed = sequences::PrimeSeed(decimal_array(field(doc, "seed"), "seed"));
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).rfind("certificate:", 0) == 0) throw;
    schema_error(std::string("invalid seed: ") + e.what());
  }
  cert.target = decimal_field(doc, "target");
  const Json& steps = field(doc, "steps");
  if (!steps.is_array()) schema_error("field 'steps' must be an array");
  for (const auto& s : steps) {
    prover::CertificateStep step;
    const Json& subset = field(s, "I");
    if (!subset.is_array()) schema_error("field 'I' must be an array");
    for (const auto& idx : subset) {
      if (!idx.is_number_unsigned()) schema_error("entries of 'I' must be nonnegative integers");
      step.subset.push_back(idx.get<std::size_t>());
    }
    step.step_value = decimal_field(s, "N");
    step.prime = decimal_field(s, "p");
    const Json& role = field(s, "role");
    const Json& note = field(s, "note");
    if (!role.is_string() || !note.is_string()) schema_error("'role' and 'note' must be strings");
    auto r = prover::parse_role(role.get<std::string>());
    auto n = prover::parse_note(note.get<std::string>());
    if (!r) schema_error("unknown role '" + role.get<std::string>() + "'");
    if (!n) schema_error("unknown note '" + note.get<std::string>() + "'");
    step.role = *r;
    step.note = *n;
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

Json chain_document(const prover::CoverResult& cover) {
  Json certs = Json::array();
  for (const auto& c : cover.chain) certs.push_back(to_json(c));
  Json out;
  out["certificates"] = std::move(certs);
  out["complete"] = cover.complete();
  out["final_seed"] = decimal_list(cover.final_seed.primes());
  if (cover.failure) {
    const auto& f = *cover.failure;
    Json failure;
    failure["status"] = prover::to_string(f.status);
    failure["target"] = to_decimal(f.certificate.target);
    failure["reason"] = f.reason;
    if (f.blocking_composite) failure["blocking"] = to_decimal(*f.blocking_composite);
    failure["partial"] = to_json(f.certificate);
    out["failure"] = std::move(failure);
  }
  return out;
}

std::vector<prover::Certificate> certificates_from_document(const Json& doc) {
  std::vector<prover::Certificate> out;
  if (doc.is_object() && doc.contains("certificates")) {
    const Json& certs = doc.at("certificates");
    if (!certs.is_array()) schema_error("field 'certificates' must be an array");
    for (const auto& c : certs) out.push_back(certificate_from_json(c));
  } else {
    out.push_back(certificate_from_json(doc));
  }
  return out;
}

}  // namespace euclid::cli
