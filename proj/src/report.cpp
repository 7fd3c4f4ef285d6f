#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace homlie::report {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw NumericError("report: refusing to serialise a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json Json::object() { Json j; j.kind_ = Kind::object; return j; }
Json Json::array() { Json j; j.kind_ = Kind::array; return j; }
Json Json::number(double v) { Json j; j.kind_ = Kind::number; j.num_ = v; return j; }
Json Json::integer(std::int64_t v) { Json j; j.kind_ = Kind::integer; j.int_ = v; return j; }
Json Json::uinteger(std::uint64_t v) { Json j; j.kind_ = Kind::uinteger; j.uint_ = v; return j; }
Json Json::boolean(bool v) { Json j; j.kind_ = Kind::boolean; j.bool_ = v; return j; }
Json Json::string(std::string v) { Json j; j.kind_ = Kind::string; j.str_ = std::move(v); return j; }
Json Json::null() { return Json(); }

Json Json::complex(Cplx z) {
  Json j = object();
  j.set("re", number(z.real()));
  j.set("im", number(z.imag()));
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  if (kind_ != Kind::object) throw NumericError("Json::set on a non-object");
  members_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::array) throw NumericError("Json::push on a non-array");
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void escape_to(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string closing(static_cast<std::size_t>(indent * depth), ' ');
  switch (kind_) {
    case Kind::null: out += "null"; break;
    case Kind::boolean: out += bool_ ? "true" : "false"; break;
    case Kind::integer: out += std::to_string(int_); break;
    case Kind::uinteger: out += std::to_string(uint_); break;
    case Kind::number: out += format_double(num_); break;
    case Kind::string: escape_to(out, str_); break;
    case Kind::object: {
      if (members_.empty()) { out += "{}"; break; }
      out += "{\n";
      for (std::size_t k = 0; k < members_.size(); ++k) {
        out += pad;
        escape_to(out, members_[k].first);
        out += ": ";
        members_[k].second.dump_to(out, indent, depth + 1);
        if (k + 1 < members_.size()) out += ',';
        out += '\n';
      }
      out += closing + "}";
      break;
    }
    case Kind::array: {
      if (items_.empty()) { out += "[]"; break; }
      out += "[\n";
      for (std::size_t k = 0; k < items_.size(); ++k) {
        out += pad;
        items_[k].dump_to(out, indent, depth + 1);
        if (k + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += closing + "]";
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  out += '\n';
  return out;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw NumericError("Csv: row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string Csv::str() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) {
    out += header_[k];
    out += (k + 1 < header_.size()) ? "," : "\n";
  }
  for (const auto& r : rows_) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      out += r[k];
      out += (k + 1 < r.size()) ? "," : "\n";
    }
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericError("report: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw NumericError("report: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericError("report: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json identity_report_json(const algebra::IdentityReport& rep) {
  Json j = Json::object();
  j.set("identity", Json::string(rep.identity));
  j.set("samples", Json::integer(rep.samples));
  j.set("seed", Json::uinteger(rep.seed));
  j.set("max_defect", Json::number(rep.max_defect));
  j.set("tolerance", Json::number(rep.tolerance));
  j.set("pass", Json::boolean(rep.pass));
  return j;
}

Json decomposition_json(const bohr::SpectralDecomposition& dec, std::uint64_t seed) {
  std::vector<const bohr::BohrMode*> order;
  order.reserve(dec.modes.size());
  for (const auto& m : dec.modes) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [](const bohr::BohrMode* a, const bohr::BohrMode* b) {
    if (a->lambda.imag() != b->lambda.imag()) return a->lambda.imag() < b->lambda.imag();
    return a->lambda.real() < b->lambda.real();
  });

  Json modes = Json::array();
  for (const bohr::BohrMode* m : order) {
    Json entry = Json::object();
    entry.set("lambda", Json::complex(m->lambda));
    entry.set("magnitude", Json::number(m->magnitude));
    entry.set("tag", Json::string(bohr::tag_name(m->tag)));
    entry.set("source", Json::string(m->source == bohr::ModeSource::eig ? "eig" : "average"));
    modes.push(std::move(entry));
  }

  Json j = Json::object();
  j.set("modes", std::move(modes));
  j.set("reconstruction_error", Json::number(dec.reconstruction_error));
  j.set("abs_sum", Json::number(dec.abs_sum));
  j.set("prefactor", Json::complex(dec.prefactor));
  j.set("seed", Json::uinteger(seed));
  return j;
}

std::string mode_coefficient_csv(const bohr::BohrMode& mode) {
  Csv csv({"row", "col", "re", "im"});
  const Matrix& c = mode.coefficient;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index jj = 0; jj < c.cols(); ++jj)
      csv.row({std::to_string(i), std::to_string(jj), format_double(c(i, jj).real()),
               format_double(c(i, jj).imag())});
  return csv.str();
}

std::string orbit_csv(const dynamics::OrbitSample& orbit, Index row, Index col) {
  Csv csv({"t", "norm", "re_entry", "im_entry"});
  for (std::size_t k = 0; k < orbit.times.size(); ++k) {
    const Cplx entry = orbit.states[k](row, col);
    csv.row({format_double(orbit.times[k]), format_double(orbit.norms[k]),
             format_double(entry.real()), format_double(entry.imag())});
  }
  return csv.str();
}

}  // namespace homlie::report
