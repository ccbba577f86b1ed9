#include "hsbmo/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hsbmo {

namespace {

constexpr char kMagic[6] = {'H', 'S', 'B', 'M', 'O', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  static_assert(sizeof(double) == 8);
  os.write(reinterpret_cast<const char*>(&v), 8);  // little-endian hosts
}

double get_f64(std::istream& is) {
  double v;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

void put_values(std::ostream& os, const std::vector<cplx>& v) {
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(cplx)));
}

void get_values(std::istream& is, std::vector<cplx>& v) {
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(cplx)));
}

struct Header {
  int d;
  int N;
  double h;
  int M;
  int kind;
};

void write_header(std::ostream& os, const BoundaryGrid& g, int M, int kind) {
  os.write(kMagic, 6);
  put_u32(os, static_cast<std::uint32_t>(g.d));
  put_u32(os, static_cast<std::uint32_t>(g.N));
  put_f64(os, g.h);
  put_u32(os, static_cast<std::uint32_t>(M));
  os.put(static_cast<char>(kind));
}

Header read_header(std::istream& is, const std::string& path) {
  char magic[6];
  is.read(magic, 6);
  if (!is || std::memcmp(magic, kMagic, 6) != 0)
    throw IoError("bad magic in " + path);
  Header h;
  h.d = static_cast<int>(get_u32(is));
  h.N = static_cast<int>(get_u32(is));
  h.h = get_f64(is);
  h.M = static_cast<int>(get_u32(is));
  h.kind = is.get();
  if (!is) throw IoError("truncated header in " + path);
  return h;
}

}  // namespace

void write_field(const std::string& path, const SampledField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_header(os, f.grid, f.M, 0);
  put_values(os, f.values);
  if (!os) throw IoError("write failed for " + path);
}

SampledField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  const Header h = read_header(is, path);
  if (h.kind != 0) throw IoError("not a boundary field: " + path);
  SampledField f(make_grid(h.d, h.N, h.h), h.M);
  get_values(is, f.values);
  if (!is) throw IoError("truncated data in " + path);
  return f;
}

void write_halfspace(const std::string& path, const HalfSpaceField& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_header(os, u.grid, u.M, 1);
  put_u32(os, static_cast<std::uint32_t>(u.t_levels.size()));
  for (double t : u.t_levels) put_f64(os, t);
  const int G = u.has_gradient() ? u.grad_channels() : 0;
  os.put(static_cast<char>(G));
  for (std::size_t lev = 0; lev < u.t_levels.size(); ++lev) {
    put_values(os, u.values[lev]);
    if (G > 0) put_values(os, u.grad[lev]);
  }
  if (!os) throw IoError("write failed for " + path);
}

HalfSpaceField read_halfspace(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  const Header h = read_header(is, path);
  if (h.kind != 1) throw IoError("not a half-space field: " + path);
  HalfSpaceField u;
  u.grid = make_grid(h.d, h.N, h.h);
  u.M = h.M;
  const std::uint32_t K = get_u32(is);
  u.t_levels.resize(K);
  for (auto& t : u.t_levels) t = get_f64(is);
  const int G = is.get();
  const std::size_t NN = u.grid.node_count();
  u.values.assign(K, std::vector<cplx>(NN * h.M));
  if (G > 0) u.grad.assign(K, std::vector<cplx>(NN * G * h.M));
  for (std::uint32_t lev = 0; lev < K; ++lev) {
    get_values(is, u.values[lev]);
    if (G > 0) get_values(is, u.grad[lev]);
  }
  if (!is) throw IoError("truncated data in " + path);
  return u;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const SampledField& f) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  const std::size_t NN = f.grid.node_count();
  for (std::size_t k = 0; k < NN; ++k) {
    double xy[2] = {0.0, 0.0};
    f.grid.node_coords(k, xy);
    os << format_double(xy[0]);
    if (f.grid.d == 2) os << ',' << format_double(xy[1]);
    for (int c = 0; c < f.M; ++c)
      os << ',' << format_double(f.values[k * f.M + c].real()) << ','
         << format_double(f.values[k * f.M + c].imag());
    os << '\n';
  }
}

SampledField read_field_csv(const std::string& path, int d, int N, double h, int M) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  SampledField f(make_grid(d, N, h), M);
  std::string line;
  std::size_t k = 0;
  const std::size_t NN = f.grid.node_count();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (k >= NN) throw IoError("too many rows in " + path);
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> nums;
    while (std::getline(ss, cell, ',')) nums.push_back(std::stod(cell));
    if (nums.size() != static_cast<std::size_t>(d + 2 * M))
      throw IoError("bad column count in " + path);
    for (int c = 0; c < M; ++c)
      f.values[k * M + c] = cplx(nums[d + 2 * c], nums[d + 2 * c + 1]);
    ++k;
  }
  if (k != NN) throw IoError("row count mismatch in " + path);
  return f;
}

void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw IoError("write_curve_csv: length mismatch");
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (is) {
    is.read(buf, sizeof(buf));
    const std::streamsize got = is.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace hsbmo
