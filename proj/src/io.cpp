#include "smo/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smo/errors.hpp"
#include "smo/primes.hpp"

namespace smo {

using nlohmann::json;

json spec_to_json(const RepresentationSpec& spec) {
  json j;
  if (const auto* chi = std::get_if<Gl1Character>(&spec.kind)) {
    j["kind"] = "gl1";
    j["modulus"] = chi->modulus;
    j["index"] = chi->index;
  } else {
    j["kind"] = "gl2";
    j["weight"] = std::get<Gl2Eigenform>(spec.kind).weight;
  }
  j["label"] = spec.label.empty() ? default_label(spec) : spec.label;
  return j;
}

RepresentationSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("representation spec must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw PreconditionError("representation spec needs a string field \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  auto integer = [&](const char* key) -> long long {
    if (!j.contains(key)) throw PreconditionError(std::string("representation spec missing \"") + key + "\"");
    if (!j[key].is_number_integer())
      throw PreconditionError(std::string("representation spec field \"") + key + "\" must be an integer");
    return j[key].get<long long>();
  };
  RepresentationSpec spec;
  if (kind == "gl1") {
    const long long modulus = integer("modulus");
    const long long index = integer("index");
    if (modulus < 1 || modulus > static_cast<long long>(kMaxCharacterModulus))
      throw PreconditionError("modulus out of range: " + std::to_string(modulus));
    if (index < 0) throw PreconditionError("character index must be nonnegative");
    spec.kind = Gl1Character{static_cast<std::uint32_t>(modulus), static_cast<std::uint64_t>(index)};
  } else if (kind == "gl2") {
    const long long weight = integer("weight");
    if (weight < 0 || weight > 1000 || !is_supported_weight(static_cast<int>(weight)))
      throw PreconditionError("unsupported weight: " + std::to_string(weight));
    spec.kind = Gl2Eigenform{static_cast<int>(weight)};
  } else {
    throw PreconditionError("unknown representation kind: " + kind);
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw PreconditionError("representation label must be a string");
    spec.label = j["label"].get<std::string>();
  }
  if (spec.label.empty()) spec.label = default_label(spec);
  return spec;
}

RepresentationSpec load_spec(const std::string& path_or_json) {
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && path_or_json[first] == '{') {
    text = path_or_json;
  } else {
    std::ifstream file(path_or_json);
    if (!file) throw PreconditionError("cannot open representation spec: " + path_or_json);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError("invalid representation JSON (" + path_or_json + "): " + e.what());
  }
  return spec_from_json(j);
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

void write_series_csv(std::ostream& out, const RSCoefficientSeries& series) {
  out << "# degree_a=" << series.degree_a << ",degree_b=" << series.degree_b << ",label_a=" << series.label_a
      << ",label_b=" << series.label_b << ",n_max=" << series.n_max << '\n';
  out << "n,re,im,ramified\n";
  std::string line;
  for (std::size_t n = 1; n <= series.n_max; ++n) {
    line.clear();
    line += std::to_string(n);
    line += ',';
    line += format_number(series.a[n].real());
    line += ',';
    line += format_number(series.a[n].imag());
    line += series.touches_ramified(n) ? ",1\n" : ",0\n";
    out << line;
  }
}

namespace {

std::string header_field(const std::string& header, const std::string& key) {
  const std::string needle = key + "=";
  std::size_t pos = 0;
  while ((pos = header.find(needle, pos)) != std::string::npos) {
    if (pos == 0 || header[pos - 1] == ',' || header[pos - 1] == ' ') {
      const std::size_t start = pos + needle.size();
      const std::size_t end = header.find(',', start);
      return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
    }
    pos += needle.size();
  }
  throw PreconditionError("series CSV header missing " + key);
}

}  // namespace

RSCoefficientSeries read_series_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
    throw PreconditionError("series CSV must start with a '# ' header line");
  RSCoefficientSeries series;
  try {
    series.degree_a = std::stoi(header_field(header, "degree_a"));
    series.degree_b = std::stoi(header_field(header, "degree_b"));
    series.n_max = std::stoull(header_field(header, "n_max"));
  } catch (const std::logic_error& e) {
    throw PreconditionError(std::string("bad series CSV header: ") + e.what());
  }
  series.label_a = header_field(header, "label_a");
  series.label_b = header_field(header, "label_b");
  std::string line;
  if (!std::getline(in, line) || line != "n,re,im,ramified")
    throw PreconditionError("series CSV column row must be n,re,im,ramified");
  series.a.assign(series.n_max + 1, Complex{});
  std::vector<bool> flagged(series.n_max + 1, false);
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string n_s, re_s, im_s, ram_s;
    if (!std::getline(row, n_s, ',') || !std::getline(row, re_s, ',') || !std::getline(row, im_s, ',') ||
        !std::getline(row, ram_s))
      throw PreconditionError("malformed series CSV row: " + line);
    const std::size_t n = std::stoull(n_s);
    if (n != expected || n > series.n_max) throw PreconditionError("series CSV rows out of order at n=" + n_s);
    series.a[n] = Complex(std::stod(re_s), std::stod(im_s));
    flagged[n] = ram_s == "1";
    ++expected;
  }
  if (expected != series.n_max + 1) throw PreconditionError("series CSV truncated");
  for (std::size_t n = 2; n <= series.n_max; ++n) {
    if (!flagged[n]) continue;
    if (is_prime(n)) series.ramified_primes.push_back(static_cast<std::uint32_t>(n));
  }
  return series;
}

}  // namespace smo
