#include "nmr/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "nmr/errors.hpp"
#include "nmr/text.hpp"

namespace nmr {
namespace {

std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// Reads the next header integer, skipping whitespace and '#' comments.
unsigned long read_pgm_field(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c))
    fail(ErrorCode::Format, path + ": malformed PGM header");
  unsigned long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + static_cast<unsigned long>(c - '0');
    if (value > 1000000) fail(ErrorCode::Format, path + ": PGM header field out of range");
    c = in.get();
  }
  if (c != EOF) in.unget();
  return value;
}

Matrix load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    fail(ErrorCode::Format, path + ": not a binary PGM (P5) file");
  const unsigned long width = read_pgm_field(in, path);
  const unsigned long height = read_pgm_field(in, path);
  const unsigned long maxval = read_pgm_field(in, path);
  if (width == 0 || height == 0) fail(ErrorCode::Format, path + ": empty PGM image");
  if (maxval != 255)
    fail(ErrorCode::Format, path + ": PGM maxval must be 255, got " + std::to_string(maxval));
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    fail(ErrorCode::Format, path + ": malformed PGM header");

  std::vector<char> bytes(width * height);
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size())
    fail(ErrorCode::Format, path + ": truncated PGM pixel data");

  Matrix m(height, width);
  for (unsigned long r = 0; r < height; ++r)
    for (unsigned long c = 0; c < width; ++c)
      m(r, c) = static_cast<double>(static_cast<unsigned char>(bytes[r * width + c]));
  return m;
}

void save_pgm(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
  std::vector<char> bytes(m.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double v = std::clamp(m(r, c), 0.0, 255.0);
      bytes[r * m.cols() + c] = static_cast<char>(static_cast<unsigned char>(std::lround(v)));
    }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

Matrix load_csv_image(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& tok : split(line, ','))
      row.push_back(parse_double(tok, path + ":" + std::to_string(lineno)));
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCode::Format, path + ":" + std::to_string(lineno) + ": row length " +
                                  std::to_string(row.size()) + " != " +
                                  std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Format, path + ": no data rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

void save_csv_image(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

}  // namespace

Matrix load_image(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return load_pgm(path);
  if (ext == ".csv") return load_csv_image(path);
  fail(ErrorCode::Format, path + ": unsupported image format (want .pgm or .csv)");
}

void save_image(const Matrix& m, const std::string& path) {
  if (m.size() == 0) fail(ErrorCode::InvalidArgument, "save_image: empty matrix");
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return save_pgm(m, path);
  if (ext == ".csv") return save_csv_image(m, path);
  fail(ErrorCode::Format, path + ": unsupported image format (want .pgm or .csv)");
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open: " + path);
  Manifest manifest;
  manifest.root = std::filesystem::path(path).parent_path().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto parts = split(t, ',');
    if (parts.size() != 2)
      fail(ErrorCode::Format,
           path + ":" + std::to_string(lineno) + ": expected 'path,label', got '" + t + "'");
    ManifestEntry entry{trim(parts[0]), trim(parts[1])};
    if (entry.path.empty() || entry.label.empty())
      fail(ErrorCode::Format, path + ":" + std::to_string(lineno) + ": empty path or label");
    manifest.entries.push_back(std::move(entry));
  }
  if (manifest.entries.empty()) fail(ErrorCode::Format, path + ": manifest has no entries");
  return manifest;
}

std::vector<LabeledImage> load_manifest_images(const Manifest& manifest) {
  std::vector<LabeledImage> images;
  images.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    const std::string full =
        (std::filesystem::path(manifest.root) / entry.path).string();
    images.push_back({load_image(full), entry.label});
    if (images.size() > 1) {
      const auto& first = images.front().image;
      const auto& cur = images.back().image;
      if (cur.rows() != first.rows() || cur.cols() != first.cols())
        fail(ErrorCode::DimensionMismatch,
             full + ": image is " + std::to_string(cur.rows()) + "x" + std::to_string(cur.cols()) +
                 " but the manifest's first image is " + std::to_string(first.rows()) + "x" +
                 std::to_string(first.cols()));
    }
  }
  return images;
}

Matrix normalize_unit_frobenius(const Matrix& m) {
  const double norm = frobenius_norm(m);
  if (norm == 0.0)
    fail(ErrorCode::InvalidArgument, "normalize_unit_frobenius: zero image");
  Matrix out = m;
  out *= 1.0 / norm;
  return out;
}

}  // namespace nmr
