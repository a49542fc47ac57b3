#include "torec/coeff_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "torec/errors.hpp"

namespace torec {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& tok, int line_no) {
  int v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw IoError("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
  return v;
}

double parse_double(const std::string& tok, int line_no) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw IoError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  return v;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur)) {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

std::string csv_header(int dim) {
  std::string h;
  for (int j = 1; j <= dim; ++j) h += "xi_" + std::to_string(j) + ",";
  return h + "re,im";
}

}  // namespace

std::string coeffs_to_csv(const std::vector<std::pair<FrequencyIndex, cplx>>& entries, int dim) {
  if (dim < 1) throw ParameterError("coeffs_to_csv: dim must be positive");
  std::string out = csv_header(dim) + "\n";
  const FrequencyIndex* prev = nullptr;
  for (const auto& [xi, v] : entries) {
    if (int(xi.size()) != dim) throw ParameterError("coeffs_to_csv: frequency rank mismatch");
    if (prev && !(*prev < xi)) throw ParameterError("coeffs_to_csv: rows must be strictly sorted");
    prev = &xi;
    for (int c : xi) out += std::to_string(c) + ",";
    out += fmt17(v.real()) + "," + fmt17(v.imag()) + "\n";
  }
  return out;
}

std::vector<std::pair<FrequencyIndex, cplx>> coeffs_from_csv(const std::string& text,
                                                             int expect_dim) {
  const auto lines = lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i][0] == '#')) ++i;
  if (i == lines.size()) throw IoError("coefficient csv: missing header");
  const auto head = split(lines[i], ',');
  if (head.size() < 3 || head[head.size() - 2] != "re" || head.back() != "im")
    throw IoError("coefficient csv: header must end with re,im");
  const int dim = int(head.size()) - 2;
  for (int j = 0; j < dim; ++j)
    if (head[std::size_t(j)] != "xi_" + std::to_string(j + 1))
      throw IoError("coefficient csv: bad frequency column name '" + head[std::size_t(j)] + "'");
  if (expect_dim >= 0 && dim != expect_dim)
    throw IoError("coefficient csv: expected dimension " + std::to_string(expect_dim) +
                  ", file has " + std::to_string(dim));

  std::vector<std::pair<FrequencyIndex, cplx>> entries;
  for (++i; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = int(i) + 1;
    const auto toks = split(lines[i], ',');
    if (int(toks.size()) != dim + 2)
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim + 2) +
                    " fields");
    FrequencyIndex xi(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) xi[std::size_t(j)] = parse_int(toks[std::size_t(j)], line_no);
    const double re = parse_double(toks[std::size_t(dim)], line_no);
    const double im = parse_double(toks[std::size_t(dim) + 1], line_no);
    if (!entries.empty() && !(entries.back().first < xi))
      throw IoError("line " + std::to_string(line_no) + ": rows out of order");
    entries.emplace_back(std::move(xi), cplx{re, im});
  }
  return entries;
}

void coeffs_write(const std::string& path,
                  const std::vector<std::pair<FrequencyIndex, cplx>>& entries, int dim) {
  write_text_file(path, coeffs_to_csv(entries, dim));
}

std::vector<std::pair<FrequencyIndex, cplx>> coeffs_read(const std::string& path, int expect_dim) {
  return coeffs_from_csv(read_text_file(path), expect_dim);
}

void measurements_write(const std::string& path, const Measurements& meas) {
  write_text_file(path, "# phantom=" + meas.phantom_id() + "\n" +
                            coeffs_to_csv(meas.entries(), meas.dim()));
}

Measurements measurements_read(const std::string& path) {
  const std::string text = read_text_file(path);
  std::string id;
  for (const auto& line : lines_of(text)) {
    if (line.rfind("# phantom=", 0) == 0) {
      id = line.substr(10);
      break;
    }
    if (!line.empty() && line[0] != '#') break;
  }
  auto entries = coeffs_from_csv(text);
  if (entries.empty()) throw IoError(path + ": no measurement rows");
  const int dim = int(entries.front().first.size());
  return Measurements(dim, id, std::move(entries));
}

std::vector<std::pair<FrequencyIndex, cplx>> poly_entries(const TrigPolynomial& f) {
  std::vector<std::pair<FrequencyIndex, cplx>> out;
  out.reserve(std::size_t(f.coeff_count()));
  for_each_in_cube(f.degree(), f.dim(),
                   [&](const FrequencyIndex& xi) { out.emplace_back(xi, f.coeff(xi)); });
  return out;
}

void grid_write_pgm(const std::string& path, const GridField& field) {
  if (field.dim != 1 && field.dim != 2)
    throw ParameterError("grid_write_pgm: only 1-d and 2-d rasters");
  if (field.values.empty()) throw ParameterError("grid_write_pgm: empty field");
  const int width = field.points_per_axis;
  const int height = field.dim == 2 ? field.points_per_axis : 1;

  double lo = field.values[0], hi = field.values[0];
  for (double v : field.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;

  std::string bytes;
  bytes += "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
  for (double v : field.values) {
    const double s = span > 0.0 ? (v - lo) / span : 0.0;
    const auto q = std::uint16_t(std::lround(s * 65535.0));
    bytes += char(q >> 8);
    bytes += char(q & 0xff);
  }
  write_text_file(path, bytes);

  nlohmann::json side{{"format", "pgm16be"},
                      {"dim", field.dim},
                      {"points_per_axis", field.points_per_axis},
                      {"min", lo},
                      {"max", hi}};
  write_text_file(path + ".json", side.dump(2) + "\n");
}

GridField grid_read_pgm(const std::string& path) {
  const std::string bytes = read_text_file(path);
  std::istringstream in(bytes);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (!in || magic != "P5" || maxval != 65535)
    throw IoError(path + ": not a 16-bit binary pgm");
  in.get();  // single whitespace byte before the raster
  const std::size_t start = std::size_t(in.tellg());
  const std::size_t need = std::size_t(width) * std::size_t(height) * 2;
  if (bytes.size() - start < need) throw IoError(path + ": truncated raster");

  nlohmann::json side;
  try {
    side = nlohmann::json::parse(read_text_file(path + ".json"));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ".json: " + e.what());
  }
  GridField field;
  field.dim = side.at("dim").get<int>();
  field.points_per_axis = side.at("points_per_axis").get<int>();
  const double lo = side.at("min").get<double>();
  const double hi = side.at("max").get<double>();
  if (field.dim != 1 && field.dim != 2)
    throw IoError(path + ".json: unsupported dim");
  const std::size_t expect = field.dim == 2
                                 ? std::size_t(field.points_per_axis) * std::size_t(field.points_per_axis)
                                 : std::size_t(field.points_per_axis);
  if (std::size_t(width) * std::size_t(height) != expect)
    throw IoError(path + ": raster size disagrees with the sidecar");

  field.values.resize(need / 2);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const auto hi_b = std::uint8_t(bytes[start + 2 * i]);
    const auto lo_b = std::uint8_t(bytes[start + 2 * i + 1]);
    const double s = double((unsigned(hi_b) << 8) | lo_b) / 65535.0;
    field.values[i] = lo + (hi - lo) * s;
  }
  return field;
}

std::string grid_to_csv(const GridField& field) {
  if (field.dim < 1) throw ParameterError("grid_to_csv: empty field");
  const std::int64_t G = field.points_per_axis;
  std::int64_t row_len = 1;
  for (int j = 1; j < field.dim; ++j) row_len *= G;
  std::string out;
  for (std::int64_t i = 0; i < field.size(); ++i) {
    out += fmt17(field.values[std::size_t(i)]);
    out += ((i + 1) % row_len == 0) ? '\n' : ',';
  }
  return out;
}

void grid_write_csv(const std::string& path, const GridField& field) {
  write_text_file(path, grid_to_csv(field));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failed on " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw IoError("write failed on " + path);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a64_str(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::uint64_t fnv1a64_file(const std::string& path) { return fnv1a64_str(read_text_file(path)); }

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace torec
