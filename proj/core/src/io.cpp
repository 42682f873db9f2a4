#include "combed/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "combed/angle.hpp"
#include "combed/catalog.hpp"
#include "combed/error.hpp"
#include "combed/rescale.hpp"

namespace combed {

namespace {

using json = nlohmann::json;

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string_view kind_name(SingularKind kind) {
  switch (kind) {
    case SingularKind::integrable: return "integrable";
    case SingularKind::non_integrable: return "non_integrable";
    case SingularKind::boundary: return "boundary";
  }
  return "integrable";
}

SingularKind parse_kind(const std::string& name) {
  if (name == "integrable") return SingularKind::integrable;
  if (name == "non_integrable") return SingularKind::non_integrable;
  if (name == "boundary") return SingularKind::boundary;
  throw Error(ErrorKind::parse, "unknown singular point kind '" + name + "'");
}

double number_or_nan(const json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw Error(ErrorKind::parse, "expected a number");
  return v.get<double>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

double parse_double(const std::string& field) {
  if (field == "nan" || field == "null" || field.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "malformed number '" + field + "'");
  }
  if (used != field.size()) throw Error(ErrorKind::parse, "malformed number '" + field + "'");
  return v;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string write_coefficients_json(const CoefficientSequence& c) {
  std::string out = "{\n  \"a0\": " + format_number(c.a0()) + ",\n";
  out += "  \"n\": " + std::to_string(c.size()) + ",\n  \"terms\": [";
  for (std::size_t k = 1; k <= c.size(); ++k) {
    const auto ck = c.c(k);
    out += k == 1 ? "\n" : ",\n";
    out += "    {\"k\": " + std::to_string(k) + ", \"a\": " + format_number(ck.real()) +
           ", \"b\": " + format_number(-ck.imag()) + "}";
  }
  out += c.size() == 0 ? "]" : "\n  ]";
  if (c.generator() && c.multiplier().is_identity()) {
    out += ",\n  \"generator\": {\"name\": " + json_string(c.generator()->name) + ", \"params\": {";
    bool first = true;
    for (const auto& [key, value] : c.generator()->params) {
      out += first ? "" : ", ";
      out += json_string(key) + ": " + format_number(value);
      first = false;
    }
    out += "}}";
  }
  return out + "\n}\n";
}

CoefficientSequence read_coefficients_json(std::string_view text) {
  const json doc = parse_json(text);
  try {
    if (!doc.is_object() || !doc.contains("a0") || !doc.contains("terms")) {
      throw Error(ErrorKind::parse, "coefficient JSON needs \"a0\" and \"terms\"");
    }
    const double a0 = number_or_nan(doc.at("a0"));
    const auto& terms = doc.at("terms");
    if (!terms.is_array()) throw Error(ErrorKind::parse, "\"terms\" must be an array");
    const std::size_t n = doc.contains("n") ? doc.at("n").get<std::size_t>() : terms.size();
    std::vector<double> a(n, 0.0);
    std::vector<double> b(n, 0.0);
    for (const auto& term : terms) {
      const auto k = term.at("k").get<std::size_t>();
      if (k == 0 || k > n) throw Error(ErrorKind::parse, "term index outside 1..n");
      a[k - 1] = number_or_nan(term.at("a"));
      b[k - 1] = number_or_nan(term.at("b"));
    }
    CoefficientSequence c(a0, a, b);
    if (doc.contains("generator")) {
      const auto& tag = doc.at("generator");
      Params params;
      for (const auto& [key, value] : tag.at("params").items()) params[key] = number_or_nan(value);
      c = c.with_generator(rehydrate_generator(tag.at("name").get<std::string>(), params));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

std::string write_grid_csv(const GridFunction& grid) {
  std::optional<IntervalMap> map;
  if (grid.domain()) map.emplace((*grid.domain())[0], (*grid.domain())[1]);
  std::string out = map ? "x,value,defined\n" : "theta,value,defined\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double position = map ? map->from_canonical(grid.theta(i)) : grid.theta(i);
    out += format_number(position) + ',' +
           (grid.defined(i) ? format_number(grid.value(i)) : std::string("nan")) + ',' +
           (grid.defined(i) ? '1' : '0') + '\n';
  }
  return out;
}

std::string write_grid_sidecar(const GridFunction& grid) {
  std::optional<IntervalMap> map;
  if (grid.domain()) map.emplace((*grid.domain())[0], (*grid.domain())[1]);
  std::string out = "{\n  \"singular_points\": [";
  bool first = true;
  for (const auto& s : grid.singular_points()) {
    if (map && s.kind == SingularKind::boundary && std::abs(s.theta) == pi) continue;
    out += first ? "" : ", ";
    out += map ? "{\"x\": " + format_number(map->from_canonical(s.theta))
               : "{\"theta\": " + format_number(s.theta);
    out += ", \"kind\": " + json_string(kind_name(s.kind)) + "}";
    first = false;
  }
  out += "],\n  \"note\": " + json_string(grid.note());
  if (map) out += ",\n  \"domain\": [" + format_number(map->a()) + ", " + format_number(map->b()) + "]";
  return out + "\n}\n";
}

GridFunction read_grid(std::string_view csv, std::optional<std::string_view> sidecar,
                       std::optional<std::array<double, 2>> domain) {
  std::vector<SingularPoint> singular;
  std::string note;
  std::optional<IntervalMap> map;
  if (domain) map.emplace((*domain)[0], (*domain)[1]);
  if (sidecar) {
    const json doc = parse_json(*sidecar);
    try {
      if (doc.contains("domain") && !domain) {
        const auto& d = doc.at("domain");
        if (!d.is_array() || d.size() != 2) throw Error(ErrorKind::parse, "\"domain\" must be [a, b]");
        map.emplace(d[0].get<double>(), d[1].get<double>());
      }
      if (doc.contains("note")) note = doc.at("note").get<std::string>();
      if (doc.contains("singular_points")) {
        for (const auto& s : doc.at("singular_points")) {
          const SingularKind kind =
              s.contains("kind") ? parse_kind(s.at("kind").get<std::string>()) : SingularKind::integrable;
          if (s.contains("x") && !map) {
            throw Error(ErrorKind::parse, "singular point given by x but the grid has no domain");
          }
          const double theta = s.contains("x") ? map->to_canonical(s.at("x").get<double>())
                                               : wrap_angle(s.at("theta").get<double>());
          singular.push_back({theta, kind});
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse, e.what());
    }
  }
  if (map) singular.push_back({pi, SingularKind::boundary});

  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::parse, "empty grid CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected = map ? "x,value,defined" : "theta,value,defined";
  if (line != expected) throw Error(ErrorKind::parse, "grid CSV header must be '" + expected + "'");

  std::vector<double> positions;
  std::vector<double> values;
  std::vector<bool> defined;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 3) throw Error(ErrorKind::parse, "grid CSV rows need 3 fields: " + line);
    positions.push_back(parse_double(fields[0]));
    const double v = parse_double(fields[1]);
    const bool d = fields[2] == "1";
    if (!d && fields[2] != "0") throw Error(ErrorKind::parse, "defined flag must be 0 or 1");
    values.push_back(d ? v : std::numeric_limits<double>::quiet_NaN());
    defined.push_back(d);
  }
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorKind::parse, "grid CSV needs at least 2 rows");
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = -pi + two_pi * static_cast<double>(i) / static_cast<double>(n);
    const double expected_pos = map ? map->from_canonical(theta) : theta;
    const double scale = map ? std::max(std::abs(map->a()), std::abs(map->b())) : pi;
    if (!(std::abs(positions[i] - expected_pos) <= 1e-9 * std::max(1.0, scale))) {
      throw Error(ErrorKind::parse, "grid CSV positions must be the uniform nodes -pi + 2 pi i / n");
    }
  }
  GridFunction grid(std::move(values), std::move(defined), std::move(singular), std::move(note));
  if (map) grid.set_domain(std::array<double, 2>{map->a(), map->b()});
  return grid;
}

std::string write_report_json(const ClassificationReport& report) {
  std::string out = "{\n  \"overall\": " + json_string(to_string(report.overall)) + ",\n";
  out += "  \"params\": {\"n_grid\": " + std::to_string(report.params.n_grid) + ", \"eps_schedule\": [";
  for (std::size_t i = 0; i < report.params.eps_schedule.size(); ++i) {
    out += (i ? ", " : "") + format_number(report.params.eps_schedule[i]);
  }
  out += "], \"tol\": " + format_number(report.params.tolerance) + "},\n";
  out += "  \"counts\": {";
  const NodeVerdict verdicts[] = {NodeVerdict::recovered, NodeVerdict::spike_mismatch,
                                  NodeVerdict::jump_midpoint_mismatch, NodeVerdict::undefined};
  for (std::size_t i = 0; i < 4; ++i) {
    out += (i ? ", " : "") + json_string(to_string(verdicts[i])) + ": " +
           std::to_string(report.count(verdicts[i]));
  }
  out += "},\n  \"nodes\": [";
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    const auto& node = report.nodes[i];
    out += i ? ",\n" : "\n";
    out += "    {\"theta\": " + format_number(node.theta) + ", \"verdict\": " +
           json_string(to_string(node.verdict)) + ", \"value\": " + format_number(node.value) +
           ", \"residual\": " + format_number(node.residual) + "}";
  }
  out += report.nodes.empty() ? "]" : "\n  ]";
  return out + "\n}\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::parse, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".json");
}

GridFunction load_grid(const std::filesystem::path& csv, std::optional<std::array<double, 2>> domain) {
  const std::string body = read_text_file(csv);
  const auto side = sidecar_path(csv);
  if (std::filesystem::exists(side)) {
    const std::string meta = read_text_file(side);
    return read_grid(body, meta, domain);
  }
  return read_grid(body, std::nullopt, domain);
}

void save_grid(const GridFunction& grid, const std::filesystem::path& csv) {
  write_text_file(csv, write_grid_csv(grid));
  write_text_file(sidecar_path(csv), write_grid_sidecar(grid));
}

}  // namespace combed
