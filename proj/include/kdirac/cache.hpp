#pragma once

#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "matrix.hpp"
#include "syzygy.hpp"

namespace kdirac {

/// Stable error code for unreadable cache files; callers match on this,
/// delete the offending file and recompute.
inline constexpr const char* cache_corrupt_code = "E_CACHE_CORRUPT";

class CacheError : public std::runtime_error {
 public:
  CacheError(std::filesystem::path file, const std::string& why)
      : std::runtime_error(std::string(cache_corrupt_code) + " " + file.string() + ": " + why),
        file_(std::move(file)) {}
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
};

/// Identifies one graded-slice matrix: parameters, operator id, slice degree
/// and whether the slice uses the weighted or the ordinary degree.
struct CacheKey {
  int k = 0, n = 0;
  std::string op_id;
  int degree = 0;
  bool weighted = false;
};

/// On-disk store of sparse matrices over Q(i), one file per matrix.  The
/// format is line-oriented text: a header echoing the key and the shape, one
/// "row col value" line per entry with the value in canonical "a/b+c/d i"
/// form, and a terminating marker so truncated files are detected.  Writes
/// go to a temporary name in the same directory and are renamed into place,
/// so concurrent readers never observe a partial file.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const CacheKey& key) const {
    for (char c : key.op_id)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
        throw std::invalid_argument("MatrixCache: operator id must be [A-Za-z0-9_-]");
    std::string name = "k" + std::to_string(key.k) + "-n" + std::to_string(key.n) + "-" +
                       key.op_id + "-t" + std::to_string(key.degree) +
                       (key.weighted ? "-w" : "-o") + ".mat";
    return dir_ / name;
  }

  /// Loads the matrix for the key, or nullopt if absent.  Throws CacheError
  /// if the file exists but cannot be read back exactly.
  std::optional<SparseMatrix> load(const CacheKey& key) const {
    const auto file = path_for(key);
    std::ifstream in(file);
    if (!in) return std::nullopt;

    auto fail = [&](const std::string& why) -> std::optional<SparseMatrix> {
      throw CacheError(file, why);
    };

    std::string magic;
    int version = 0, k = 0, n = 0, degree = 0, weighted = 0, rows = 0, cols = 0;
    std::string op_id;
    size_t nnz = 0;
    std::string header;
    if (!std::getline(in, header)) return fail("missing header");
    {
      std::istringstream hs(header);
      if (!(hs >> magic >> version >> k >> n >> op_id >> degree >> weighted >> rows >> cols >> nnz))
        return fail("malformed header");
    }
    if (magic != "kdirac-matrix") return fail("bad magic '" + magic + "'");
    if (version != 1) return fail("unsupported version " + std::to_string(version));
    if (k != key.k || n != key.n || op_id != key.op_id || degree != key.degree ||
        weighted != (key.weighted ? 1 : 0))
      return fail("header does not match the requested key");
    if (rows < 0 || cols < 0) return fail("negative shape");

    SparseMatrix m(rows, cols);
    std::string line;
    for (size_t e = 0; e < nnz; ++e) {
      if (!std::getline(in, line)) return fail("truncated entry list");
      std::istringstream ls(line);
      int r = 0, c = 0;
      if (!(ls >> r >> c)) return fail("malformed entry '" + line + "'");
      std::string value;
      std::getline(ls, value);
      while (!value.empty() && value.front() == ' ') value.erase(0, 1);
      Scalar v;
      try {
        v = Scalar::parse(value);
      } catch (const std::invalid_argument&) {
        return fail("malformed value '" + value + "'");
      }
      if (r < 0 || r >= rows || c < 0 || c >= cols) return fail("entry index out of range");
      if (v.is_zero()) return fail("explicit zero entry");
      m.add(r, c, std::move(v));
    }
    if (!std::getline(in, line) || line != "end") return fail("missing end marker");
    m.finalize();
    return m;
  }

  /// Atomically writes the matrix under the key (write temp, rename over).
  void store(const CacheKey& key, const SparseMatrix& m) const {
    const auto file = path_for(key);
    std::ostringstream out;
    out << "kdirac-matrix 1 " << key.k << " " << key.n << " " << key.op_id << " " << key.degree
        << " " << (key.weighted ? 1 : 0) << " " << m.rows() << " " << m.cols() << " " << m.nnz()
        << "\n";
    for (int r = 0; r < m.rows(); ++r)
      for (const auto& e : m.row(r)) out << r << " " << e.col << " " << e.v.str() << "\n";
    out << "end\n";

    const auto tmp = dir_ / (".tmp-" + file.filename().string() + "-" +
                             std::to_string(static_cast<long>(::getpid())));
    {
      std::ofstream f(tmp, std::ios::trunc);
      if (!f) throw std::runtime_error("MatrixCache: cannot write " + tmp.string());
      f << out.str();
      if (!f.flush()) throw std::runtime_error("MatrixCache: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
  }

  void remove(const CacheKey& key) const {
    std::error_code ec;
    std::filesystem::remove(path_for(key), ec);
  }

 private:
  std::filesystem::path dir_;
};

/// Fetches a graded-slice matrix through the cache when one is supplied.  A
/// corrupt file is reported on diag, deleted and recomputed; a run never
/// fails because of a damaged cache.
inline SparseMatrix symbol_gr_matrix_cached(int k, int n, const SymbolOp& op, int t,
                                            const MatrixCache* cache,
                                            std::ostream* diag = nullptr) {
  if (!cache) return symbol_gr_matrix(op, t);
  CacheKey key{k, n, op.id, t, false};
  try {
    if (auto m = cache->load(key)) return std::move(*m);
  } catch (const CacheError& err) {
    if (diag) *diag << err.what() << " (rebuilding)\n";
    cache->remove(key);
  }
  SparseMatrix m = symbol_gr_matrix(op, t);
  m.finalize();
  cache->store(key, m);
  return m;
}

inline ExactnessRow exactness_at_cached(const OperatorStack& st, int spot, int degree,
                                        const MatrixCache* cache, std::ostream* diag = nullptr) {
  if (spot < 1 || spot + 1 > int(st.ops.size()))
    throw std::invalid_argument("exactness_at: spot out of range");
  const SymbolOp& din = st.ops[spot - 1];
  const SymbolOp& dout = st.ops[spot];
  const int i = degree + min_q(dout.src);
  SparseMatrix m_out = symbol_gr_matrix_cached(st.k, st.n, dout, i, cache, diag);
  SparseMatrix m_in = symbol_gr_matrix_cached(st.k, st.n, din, i + 1, cache, diag);
  long rk_in = rank(m_in);
  long ker = long(m_out.cols()) - rank(m_out);
  return {spot, degree, rk_in, ker, rk_in == ker};
}

inline std::vector<SolutionRow> solution_dims_cached(const OperatorStack& st, int dlo, int dhi,
                                                     const MatrixCache* cache,
                                                     std::ostream* diag = nullptr) {
  std::vector<SolutionRow> rows;
  for (int d = dlo; d <= dhi; ++d) {
    SparseMatrix m = symbol_gr_matrix_cached(st.k, st.n, st.ops.at(0), d, cache, diag);
    long rk = rank(m);
    long ker = long(kernel_basis(m).size());
    rows.push_back({d, m.cols(), rk, ker});
  }
  return rows;
}

}  // namespace kdirac
