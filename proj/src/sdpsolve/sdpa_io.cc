#include "reachbound/sdpsolve/sdpa_io.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "reachbound/common/errors.h"

namespace reachbound {
namespace {

using Key = std::tuple<int, int, int, int>;

std::string Format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Next line that is not empty and not a comment.
bool DataLine(std::istream& in, std::string* line) {
  while (std::getline(in, *line)) {
    const auto first = line->find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char ch = (*line)[first];
    if (ch == '"' || ch == '*') continue;
    return true;
  }
  return false;
}

std::string StripPunctuation(std::string s) {
  for (char& ch : s) {
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  }
  return s;
}

}  // namespace

SdpaProblem ToSdpa(const SdpInstance& inst) {
  SdpaProblem p;
  p.num_constraints = inst.num_constraints();
  p.block_struct = inst.block_sizes;
  const int nf = inst.num_free();
  const int lp_block = inst.num_blocks() + 1;
  if (nf > 0) p.block_struct.push_back(-2 * nf);

  std::map<Key, double> acc;
  for (const auto& e : inst.block_objective) {
    acc[{0, e.block + 1, std::min(e.row, e.col) + 1, std::max(e.row, e.col) + 1}] -= e.value;
  }
  for (int k = 0; k < nf; ++k) {
    acc[{0, lp_block, k + 1, k + 1}] -= inst.free_objective[k];
    acc[{0, lp_block, nf + k + 1, nf + k + 1}] += inst.free_objective[k];
  }
  for (int i = 0; i < inst.num_constraints(); ++i) {
    const auto& c = inst.constraints[i];
    p.c.push_back(c.rhs);
    for (const auto& e : c.entries) {
      acc[{i + 1, e.block + 1, std::min(e.row, e.col) + 1, std::max(e.row, e.col) + 1}] +=
          e.value;
    }
    for (const auto& t : c.free_terms) {
      acc[{i + 1, lp_block, t.index + 1, t.index + 1}] += t.value;
      acc[{i + 1, lp_block, nf + t.index + 1, nf + t.index + 1}] -= t.value;
    }
  }
  for (const auto& [key, v] : acc) {
    if (v == 0.0) continue;
    const auto [mat, blk, r, c] = key;
    p.entries.push_back({mat, blk, r, c, v});
  }
  return p;
}

namespace {

// A diagonal block of size 2k whose entries satisfy d[k + j] = -d[j] in every
// matrix is a split free vector, as written by ToSdpa.
bool IsSplitFreeBlock(const SdpaProblem& p, int block) {
  const int s = -p.block_struct[block];
  if (s <= 0 || s % 2) return false;
  const int half = s / 2;
  std::map<std::pair<int, int>, double> vals;
  for (const auto& e : p.entries) {
    if (e.block == block + 1) vals[{e.matrix, e.row - 1}] += e.value;
  }
  for (const auto& [key, v] : vals) {
    const int j = key.second < half ? key.second + half : key.second - half;
    const auto it = vals.find({key.first, j});
    if (it == vals.end() || it->second != -v) return false;
  }
  return true;
}

}  // namespace

SdpInstance FromSdpa(const SdpaProblem& p) {
  SdpInstance inst;
  // Each SDPA block becomes one dense block, a run of 1x1 blocks, or a run of
  // free variables.
  std::vector<int> first_block(p.block_struct.size(), -1);
  std::vector<int> first_free(p.block_struct.size(), -1);
  for (size_t b = 0; b < p.block_struct.size(); ++b) {
    const int s = p.block_struct[b];
    if (s > 0) {
      first_block[b] = inst.num_blocks();
      inst.block_sizes.push_back(s);
      inst.block_names.push_back("block" + std::to_string(b + 1));
    } else if (IsSplitFreeBlock(p, static_cast<int>(b))) {
      first_free[b] = inst.num_free();
      for (int k = 0; k < -s / 2; ++k) {
        inst.free_names.push_back("block" + std::to_string(b + 1) + "_free" + std::to_string(k + 1));
      }
    } else {
      first_block[b] = inst.num_blocks();
      for (int k = 0; k < -s; ++k) {
        inst.block_sizes.push_back(1);
        inst.block_names.push_back("block" + std::to_string(b + 1) + "_diag" + std::to_string(k + 1));
      }
    }
  }
  inst.constraints.resize(p.num_constraints);
  for (int i = 0; i < p.num_constraints; ++i) {
    inst.constraints[i].label = "row" + std::to_string(i + 1);
    inst.constraints[i].rhs = p.c[i];
  }
  inst.free_objective = Eigen::VectorXd::Zero(inst.num_free());
  for (const auto& e : p.entries) {
    const int b = e.block - 1;
    if (first_free[b] >= 0) {
      // Only the w+ half is read; the w- half mirrors it.
      if (e.row > -p.block_struct[b] / 2) continue;
      const int k = first_free[b] + e.row - 1;
      if (e.matrix == 0) {
        inst.free_objective[k] -= e.value;
      } else {
        inst.constraints[e.matrix - 1].free_terms.push_back({k, e.value});
      }
      continue;
    }
    BlockEntry be;
    if (p.block_struct[b] > 0) {
      be = {first_block[b], e.row - 1, e.col - 1, e.value};
    } else {
      if (e.row != e.col) throw InputError("off-diagonal entry in a diagonal SDPA block");
      be = {first_block[b] + e.row - 1, 0, 0, e.value};
    }
    if (e.matrix == 0) {
      be.value = -be.value;
      inst.block_objective.push_back(be);
    } else {
      inst.constraints[e.matrix - 1].entries.push_back(be);
    }
  }
  return inst;
}

std::string WriteSdpa(const SdpaProblem& p, const std::string& comment) {
  std::ostringstream os;
  os << '"' << comment << "\n";
  os << p.num_constraints << "\n";
  os << p.block_struct.size() << "\n";
  for (size_t b = 0; b < p.block_struct.size(); ++b) {
    os << (b ? " " : "") << p.block_struct[b];
  }
  os << "\n";
  for (size_t i = 0; i < p.c.size(); ++i) os << (i ? " " : "") << Format(p.c[i]);
  os << "\n";
  for (const auto& e : p.entries) {
    os << e.matrix << " " << e.block << " " << e.row << " " << e.col << " "
       << Format(e.value) << "\n";
  }
  return os.str();
}

SdpaProblem ReadSdpa(std::istream& in) {
  SdpaProblem p;
  std::string line;
  auto header = [&](const char* what) {
    if (!DataLine(in, &line)) throw InputError(std::string("SDPA: missing ") + what);
    return std::istringstream(StripPunctuation(line));
  };
  {
    auto ss = header("constraint count");
    if (!(ss >> p.num_constraints) || p.num_constraints < 0) {
      throw InputError("SDPA: bad constraint count");
    }
  }
  int nblocks = 0;
  {
    auto ss = header("block count");
    if (!(ss >> nblocks) || nblocks < 1) throw InputError("SDPA: bad block count");
  }
  {
    auto ss = header("block structure");
    for (int b = 0; b < nblocks; ++b) {
      int s;
      if (!(ss >> s) || s == 0) throw InputError("SDPA: bad block structure");
      p.block_struct.push_back(s);
    }
  }
  {
    auto ss = header("objective vector");
    double v;
    while (static_cast<int>(p.c.size()) < p.num_constraints) {
      if (ss >> v) {
        p.c.push_back(v);
        continue;
      }
      // The vector may wrap over several lines.
      if (!DataLine(in, &line)) throw InputError("SDPA: short objective vector");
      ss = std::istringstream(StripPunctuation(line));
    }
  }
  while (DataLine(in, &line)) {
    std::istringstream ss(line);
    SdpaProblem::Entry e;
    if (!(ss >> e.matrix >> e.block >> e.row >> e.col >> e.value)) {
      throw InputError("SDPA: malformed entry line: " + line);
    }
    if (e.matrix < 0 || e.matrix > p.num_constraints || e.block < 1 || e.block > nblocks) {
      throw InputError("SDPA: entry index out of range: " + line);
    }
    const int size = std::abs(p.block_struct[e.block - 1]);
    if (e.row < 1 || e.col < 1 || e.row > size || e.col > size) {
      throw InputError("SDPA: entry position out of range: " + line);
    }
    if (e.row > e.col) std::swap(e.row, e.col);
    p.entries.push_back(e);
  }
  return p;
}

}  // namespace reachbound
