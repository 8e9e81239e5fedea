#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kdirac {

/// One check row of a verification report.  The fixed column set keeps the
/// output machine-readable across commands; commands document how they fill
/// rank and kernel_dim.
struct ReportRow {
  int k = 0, n = 0, spot = 0, degree = 0;
  long long rank = 0, kernel_dim = 0, predicted = 0;
  bool pass = true;
  std::vector<std::pair<std::string, long long>> extra;  ///< command-specific columns
};

/// Deterministic report: insertion-ordered fields, integer-only values, so
/// identical inputs serialize byte-identically.  Every report embeds the two
/// normalization choices a reader needs to interpret signs: the square of
/// the Clifford generators and the bracket-compatibility constant of the
/// invariant fields.
class Report {
 public:
  Report(std::string command, int k, int n) : command_(std::move(command)), k_(k), n_(n) {}

  void add_row(ReportRow row) { rows_.push_back(std::move(row)); }

  void add_check(const std::string& name, bool pass) { checks_.emplace_back(name, pass); }

  void add_note(const std::string& note) { notes_.push_back(note); }

  /// Free-form table (header + string rows) for enumerative commands.
  void set_table(std::vector<std::string> header, std::vector<std::vector<std::string>> data) {
    table_header_ = std::move(header);
    table_ = std::move(data);
  }

  bool all_pass() const {
    for (const auto& r : rows_)
      if (!r.pass) return false;
    for (const auto& [name, ok] : checks_)
      if (!ok) return false;
    return true;
  }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["k"] = k_;
    j["n"] = n_;
    j["conventions"] = {{"clifford_square", -1}, {"bracket_normalization", 1}};
    if (!table_header_.empty()) {
      nlohmann::ordered_json t;
      t["columns"] = table_header_;
      t["data"] = table_;
      j["table"] = t;
    }
    if (!rows_.empty()) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& r : rows_) {
        nlohmann::ordered_json row;
        row["k"] = r.k;
        row["n"] = r.n;
        row["spot"] = r.spot;
        row["degree"] = r.degree;
        row["rank"] = r.rank;
        row["kernel_dim"] = r.kernel_dim;
        row["predicted"] = r.predicted;
        row["pass"] = r.pass;
        for (const auto& [key, val] : r.extra) row[key] = val;
        rows.push_back(std::move(row));
      }
      j["rows"] = std::move(rows);
    }
    if (!checks_.empty()) {
      nlohmann::ordered_json cs = nlohmann::ordered_json::array();
      for (const auto& [name, ok] : checks_) cs.push_back({{"name", name}, {"pass", ok}});
      j["checks"] = std::move(cs);
    }
    if (!notes_.empty()) j["notes"] = notes_;
    j["all_pass"] = all_pass();
    return j.dump(2) + "\n";
  }

  std::string to_csv() const {
    std::string out;
    out += "# command=" + command_ + " k=" + std::to_string(k_) + " n=" + std::to_string(n_) + "\n";
    out += "# clifford_square=-1 bracket_normalization=1\n";
    if (!table_header_.empty()) {
      out += join(table_header_) + "\n";
      for (const auto& row : table_) out += join(row) + "\n";
    }
    if (!rows_.empty()) {
      std::string hdr = "k,n,spot,degree,rank,kernel_dim,predicted,pass";
      for (const auto& [key, val] : rows_.front().extra) hdr += "," + key;
      out += hdr + "\n";
      for (const auto& r : rows_) {
        out += std::to_string(r.k) + "," + std::to_string(r.n) + "," + std::to_string(r.spot) +
               "," + std::to_string(r.degree) + "," + std::to_string(r.rank) + "," +
               std::to_string(r.kernel_dim) + "," + std::to_string(r.predicted) + "," +
               (r.pass ? "true" : "false");
        for (const auto& [key, val] : r.extra) out += "," + std::to_string(val);
        out += "\n";
      }
    }
    for (const auto& [name, ok] : checks_)
      out += "# check " + name + " pass=" + (ok ? std::string("true") : std::string("false")) + "\n";
    for (const auto& nmsg : notes_) out += "# note " + nmsg + "\n";
    out += std::string("# all_pass=") + (all_pass() ? "true" : "false") + "\n";
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i];
    }
    return s;
  }

  std::string command_;
  int k_, n_;
  std::vector<ReportRow> rows_;
  std::vector<std::pair<std::string, bool>> checks_;
  std::vector<std::string> notes_;
  std::vector<std::string> table_header_;
  std::vector<std::vector<std::string>> table_;
};

}  // namespace kdirac
