// Copyright 2026 The probrep developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "probrep/keylock.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace probrep::keylock {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  if (bits_.size() > 64) throw std::invalid_argument("BitString: longer than 64 bits");
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitString: non-binary character");
  }
}

BitString BitString::from_index(std::uint64_t index, int length) {
  if (length < 0 || length > 64) throw std::invalid_argument("BitString: bad length");
  std::string bits(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if (index & (1ULL << (length - 1 - i))) bits[static_cast<std::size_t>(i)] = '1';
  }
  return BitString(std::move(bits));
}

BitString BitString::prefix(int length) const {
  if (length < 0 || length > this->length()) throw std::invalid_argument("BitString: bad prefix");
  return BitString(bits_.substr(0, static_cast<std::size_t>(length)));
}

bool BitString::is_prefix_of(const BitString& other) const {
  return length() <= other.length() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BitString::compatible_with(const BitString& other) const {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::uint64_t BitString::to_index() const {
  std::uint64_t index = 0;
  for (char c : bits_) index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  return index;
}

KeyState KeyState::extreme(BitString key) {
  KeyState s;
  s.mixture.emplace(std::move(key), Rational(1));
  return s;
}

namespace {

template <typename Map>
void validate_mixture(const Map& mixture, const char* what) {
  if (mixture.empty()) throw std::invalid_argument(std::string(what) + ": empty mixture");
  Rational total = 0;
  for (const auto& [label, weight] : mixture) {
    if (weight <= 0) throw std::invalid_argument(std::string(what) + ": nonpositive weight");
    total += weight;
  }
  if (total != 1) throw std::invalid_argument(std::string(what) + ": weights do not sum to 1");
}

}  // namespace

void KeyState::validate() const { validate_mixture(mixture, "KeyState"); }

LockState LockState::extreme(LockLabel label) {
  LockState s;
  s.mixture.emplace(std::move(label), Rational(1));
  return s;
}

void LockState::validate() const { validate_mixture(mixture, "LockState"); }

KeyEffect KeyEffect::single(BitString readout) {
  KeyEffect e;
  e.depth = readout.length();
  e.accepted.insert(std::move(readout));
  return e;
}

KeyEffect KeyEffect::unit() { return single(BitString("")); }

void KeyEffect::validate() const {
  if (depth < 0 || depth > 64) throw std::invalid_argument("KeyEffect: bad depth");
  for (const auto& a : accepted) {
    if (a.length() != depth) throw std::invalid_argument("KeyEffect: readout length != depth");
  }
}

JointState JointState::product_extreme(BitString key, LockLabel lock) {
  JointState s;
  s.mixture.emplace(std::make_pair(std::move(key), std::move(lock)), Rational(1));
  return s;
}

void JointState::validate() const { validate_mixture(mixture, "JointState"); }

namespace {

/// Open probability of the extreme lock `label` on input s. Matching is
/// prefix matching in both directions: the longer string's trailing bits are
/// either ignored (input too long) or generated uniformly (input too short).
Rational lock_open_extreme(const BitString& s, const LockLabel& label) {
  if (!label.has_value()) return 0;
  const BitString& k = *label;
  if (s.length() >= k.length()) return k.is_prefix_of(s) ? Rational(1) : Rational(0);
  return s.is_prefix_of(k) ? pow2_inv(static_cast<unsigned>(k.length() - s.length())) : Rational(0);
}

Rational key_eval_extreme(const KeyEffect& effect, const BitString& k) {
  if (k.length() >= effect.depth) {
    return effect.accepted.contains(k.prefix(effect.depth)) ? Rational(1) : Rational(0);
  }
  // Missing bits are uniform: count accepted readouts extending the key.
  std::size_t extensions = 0;
  for (const auto& a : effect.accepted) {
    if (k.is_prefix_of(a)) ++extensions;
  }
  return Rational(BigInt(extensions)) * pow2_inv(static_cast<unsigned>(effect.depth - k.length()));
}

}  // namespace

Rational lock_eval(const BitString& s, bool open, const LockState& lock) {
  Rational total = 0;
  for (const auto& [label, weight] : lock.mixture) {
    const Rational p = lock_open_extreme(s, label);
    total += weight * (open ? p : 1 - p);
  }
  return total;
}

Rational key_eval(const KeyEffect& effect, const KeyState& key) {
  effect.validate();
  Rational total = 0;
  for (const auto& [k, weight] : key.mixture) {
    total += weight * key_eval_extreme(effect, k);
  }
  return total;
}

Rational product_effect_eval(const KeyEffect& key_effect, const LockEffect& lock_effect,
                             const JointState& state) {
  key_effect.validate();
  Rational total = 0;
  for (const auto& [labels, weight] : state.mixture) {
    const Rational key_part = key_eval_extreme(key_effect, labels.first);
    if (key_part == 0) continue;
    const Rational open = lock_open_extreme(lock_effect.input, labels.second);
    total += weight * key_part * (lock_effect.open ? open : 1 - open);
  }
  return total;
}

namespace {

/// sum_{s in {0,1}^n} E_K^{n,{s}}(kappa_k) * E_L^{s,open}(lambda_l) for a
/// single product extreme. Only readouts compatible with both labels
/// contribute, which collapses the sum to a closed count.
Rational adaptive_open_extreme(int n, const BitString& k, const LockLabel& label) {
  if (!label.has_value()) return 0;
  const BitString& l = *label;
  if (k.length() >= n) {
    return lock_open_extreme(k.prefix(n), label);
  }
  const Rational readout_weight = pow2_inv(static_cast<unsigned>(n - k.length()));
  if (l.length() <= n) {
    if (!k.compatible_with(l)) return 0;
    // Readouts extend both k and l: 2^{n - max(|k|, |l|)} of them, each
    // opening with probability 1.
    const int longest = std::max(k.length(), l.length());
    return readout_weight * pow2(static_cast<unsigned>(n - longest));
  }
  // |l| > n: only the readout l[:n] can open, and it must extend k.
  if (!k.is_prefix_of(l)) return 0;
  return readout_weight * pow2_inv(static_cast<unsigned>(l.length() - n));
}

}  // namespace

Rational adaptive_effect_eval(int n, const JointState& state) {
  if (n < 0 || n > 64) throw std::invalid_argument("adaptive_effect_eval: n in 0..64");
  Rational total = 0;
  for (const auto& [labels, weight] : state.mixture) {
    total += weight * adaptive_open_extreme(n, labels.first, labels.second);
  }
  return total;
}

JointState correlated_state(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("correlated_state: n in 1..16");
  JointState state;
  const Rational weight = pow2_inv(static_cast<unsigned>(n));
  for (std::uint64_t idx = 0; idx < (1ULL << n); ++idx) {
    BitString k = BitString::from_index(idx, n);
    state.mixture.emplace(std::make_pair(k, LockLabel(k)), weight);
  }
  return state;
}

Rational product_family_distance_between(int n, const JointState& a, const JointState& b) {
  if (n < 1 || n > 12) throw std::invalid_argument("product_family_distance: n in 1..12");
  const std::size_t outcomes = 1ULL << n;

  // Outcome distribution over (readout l, open/closed) for a fixed lock
  // input s, accumulated per mixture term. Keys shorter than n spread
  // uniformly over their readout extensions.
  auto accumulate = [&](const JointState& state, const BitString& s,
                        std::vector<Rational>& open, std::vector<Rational>& closed) {
    for (const auto& [labels, weight] : state.mixture) {
      const Rational open_prob = lock_open_extreme(s, labels.second);
      const BitString& k = labels.first;
      if (k.length() >= n) {
        const std::size_t idx = static_cast<std::size_t>(k.prefix(n).to_index());
        open[idx] += weight * open_prob;
        closed[idx] += weight * (1 - open_prob);
      } else {
        const Rational spread = weight * pow2_inv(static_cast<unsigned>(n - k.length()));
        const std::uint64_t base = k.to_index() << (n - k.length());
        for (std::uint64_t ext = 0; ext < (1ULL << (n - k.length())); ++ext) {
          const std::size_t idx = static_cast<std::size_t>(base | ext);
          open[idx] += spread * open_prob;
          closed[idx] += spread * (1 - open_prob);
        }
      }
    }
  };

  Rational best = 0;
  std::vector<Rational> open_a(outcomes), closed_a(outcomes), open_b(outcomes),
      closed_b(outcomes);
  for (std::uint64_t s_idx = 0; s_idx < outcomes; ++s_idx) {
    const BitString s = BitString::from_index(s_idx, n);
    std::fill(open_a.begin(), open_a.end(), Rational(0));
    std::fill(closed_a.begin(), closed_a.end(), Rational(0));
    std::fill(open_b.begin(), open_b.end(), Rational(0));
    std::fill(closed_b.begin(), closed_b.end(), Rational(0));
    accumulate(a, s, open_a, closed_a);
    accumulate(b, s, open_b, closed_b);
    Rational l1 = 0;
    for (std::size_t i = 0; i < outcomes; ++i) {
      l1 += boost::multiprecision::abs(open_a[i] - open_b[i]);
      l1 += boost::multiprecision::abs(closed_a[i] - closed_b[i]);
    }
    best = std::max(best, l1);
  }
  return best;
}

Rational product_family_distance(int n) {
  return product_family_distance_between(
      n, correlated_state(n), JointState::product_extreme(BitString(""), stubborn_lock()));
}

Rational adaptive_distance_between(int n, const JointState& a, const JointState& b) {
  const Rational pa = adaptive_effect_eval(n, a);
  const Rational pb = adaptive_effect_eval(n, b);
  // Binary measurement: statistical distance is the bias difference.
  return boost::multiprecision::abs(pa - pb);
}

Rational adaptive_distance(int n) {
  return adaptive_distance_between(
      n, correlated_state(n), JointState::product_extreme(BitString(""), stubborn_lock()));
}

int rational_matrix_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
    std::size_t pivot = pivot_row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot_row], rows[pivot]);
    const Rational lead = rows[pivot_row][col];
    for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational factor = rows[r][col] / lead;
      for (std::size_t c = col; c < cols; ++c) {
        rows[r][c] -= factor * rows[pivot_row][c];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

bool local_tomography_check(int max_len) {
  if (max_len < 0 || max_len > 4) throw std::invalid_argument("local_tomography_check: max_len in 0..4");
  const int level = max_len;
  const std::size_t finest = 1ULL << level;

  // Truncated extreme sets.
  std::vector<BitString> keys;
  for (int len = 0; len <= level; ++len) {
    for (std::uint64_t idx = 0; idx < (1ULL << len); ++idx) {
      keys.push_back(BitString::from_index(idx, len));
    }
  }
  std::vector<LockLabel> locks;
  locks.push_back(stubborn_lock());
  for (const auto& k : keys) locks.push_back(LockLabel(k));

  // Spanning effect family: level-`level` key readouts plus the unit, and
  // level-`level` open effects plus one closed effect.
  std::vector<KeyEffect> key_effects;
  key_effects.push_back(KeyEffect::unit());
  for (std::uint64_t idx = 0; idx < finest; ++idx) {
    key_effects.push_back(KeyEffect::single(BitString::from_index(idx, level)));
  }
  std::vector<LockEffect> lock_effects;
  for (std::uint64_t idx = 0; idx < finest; ++idx) {
    lock_effects.push_back({BitString::from_index(idx, level), true});
  }
  lock_effects.push_back({BitString::from_index(0, level), false});

  // Product-effect evaluation matrix: one column per joint extreme state.
  const std::size_t columns = keys.size() * locks.size();
  std::vector<std::vector<Rational>> eval_rows;
  eval_rows.reserve(key_effects.size() * lock_effects.size());
  for (const auto& ke : key_effects) {
    for (const auto& le : lock_effects) {
      std::vector<Rational> row;
      row.reserve(columns);
      for (const auto& k : keys) {
        const Rational key_part = key_eval_extreme(ke, k);
        for (const auto& l : locks) {
          const Rational open = lock_open_extreme(le.input, l);
          row.push_back(key_part * (le.open ? open : 1 - open));
        }
      }
      eval_rows.push_back(std::move(row));
    }
  }

  // Independent representation: states as integrals over the finest dyadic
  // intervals (keys) and the same plus the unit component (locks).
  auto key_vector = [&](const BitString& k) {
    std::vector<Rational> v(finest, Rational(0));
    const std::uint64_t base = k.to_index() << (level - k.length());
    const Rational mass = pow2_inv(static_cast<unsigned>(level - k.length()));
    for (std::uint64_t ext = 0; ext < (1ULL << (level - k.length())); ++ext) {
      v[static_cast<std::size_t>(base | ext)] = mass;
    }
    return v;
  };
  auto lock_vector = [&](const LockLabel& l) {
    std::vector<Rational> v(finest + 1, Rational(0));
    v[finest] = 1;
    if (l.has_value()) {
      const std::uint64_t base = l->to_index() << (level - l->length());
      const Rational mass = pow2_inv(static_cast<unsigned>(level));
      for (std::uint64_t ext = 0; ext < (1ULL << (level - l->length())); ++ext) {
        v[static_cast<std::size_t>(base | ext)] = mass;
      }
    }
    return v;
  };

  std::vector<std::vector<Rational>> oracle_columns;
  oracle_columns.reserve(columns);
  for (const auto& k : keys) {
    const auto kv = key_vector(k);
    for (const auto& l : locks) {
      const auto lv = lock_vector(l);
      std::vector<Rational> joint;
      joint.reserve(kv.size() * lv.size());
      for (const auto& a : kv)
        for (const auto& b : lv) joint.push_back(a * b);
      oracle_columns.push_back(std::move(joint));
    }
  }

  // Transpose the evaluation matrix so both ranks run over state columns.
  std::vector<std::vector<Rational>> eval_columns(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    eval_columns[c].reserve(eval_rows.size());
    for (const auto& row : eval_rows) eval_columns[c].push_back(row[c]);
  }

  const int eval_rank = rational_matrix_rank(eval_columns);
  const int oracle_rank = rational_matrix_rank(oracle_columns);
  if (eval_rank != oracle_rank) return false;

  // Distinct extreme states must keep distinct evaluation vectors.
  std::vector<std::vector<Rational>> sorted = eval_columns;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) return false;
  }
  return true;
}

namespace {

nlohmann::json rational_entry(const Rational& weight) {
  nlohmann::json j;
  j["num"] = boost::multiprecision::numerator(weight).str();
  j["den"] = boost::multiprecision::denominator(weight).str();
  return j;
}

Rational rational_from_entry(const nlohmann::json& j) {
  const BigInt num(j.at("num").get<std::string>());
  const BigInt den(j.at("den").get<std::string>());
  if (den == 0) throw std::invalid_argument("rational_from_entry: zero denominator");
  return Rational(num, den);
}

}  // namespace

nlohmann::json to_json(const KeyState& state) {
  nlohmann::json mixture = nlohmann::json::array();
  for (const auto& [key, weight] : state.mixture) {
    nlohmann::json entry = rational_entry(weight);
    entry["key"] = key.str();
    mixture.push_back(std::move(entry));
  }
  return nlohmann::json{{"mixture", std::move(mixture)}};
}

nlohmann::json to_json(const LockState& state) {
  nlohmann::json mixture = nlohmann::json::array();
  for (const auto& [label, weight] : state.mixture) {
    nlohmann::json entry = rational_entry(weight);
    if (label.has_value()) entry["lock"] = label->str();
    else entry["lock"] = nullptr;
    mixture.push_back(std::move(entry));
  }
  return nlohmann::json{{"mixture", std::move(mixture)}};
}

nlohmann::json to_json(const JointState& state) {
  nlohmann::json mixture = nlohmann::json::array();
  for (const auto& [labels, weight] : state.mixture) {
    nlohmann::json entry = rational_entry(weight);
    entry["key"] = labels.first.str();
    if (labels.second.has_value()) entry["lock"] = labels.second->str();
    else entry["lock"] = nullptr;
    mixture.push_back(std::move(entry));
  }
  return nlohmann::json{{"mixture", std::move(mixture)}};
}

KeyState key_state_from_json(const nlohmann::json& j) {
  KeyState state;
  for (const auto& entry : j.at("mixture")) {
    state.mixture.emplace(BitString(entry.at("key").get<std::string>()),
                          rational_from_entry(entry));
  }
  state.validate();
  return state;
}

LockState lock_state_from_json(const nlohmann::json& j) {
  LockState state;
  for (const auto& entry : j.at("mixture")) {
    LockLabel label = entry.at("lock").is_null()
                          ? stubborn_lock()
                          : LockLabel(BitString(entry.at("lock").get<std::string>()));
    state.mixture.emplace(std::move(label), rational_from_entry(entry));
  }
  state.validate();
  return state;
}

JointState joint_state_from_json(const nlohmann::json& j) {
  JointState state;
  for (const auto& entry : j.at("mixture")) {
    BitString key(entry.at("key").get<std::string>());
    LockLabel lock = entry.at("lock").is_null()
                         ? stubborn_lock()
                         : LockLabel(BitString(entry.at("lock").get<std::string>()));
    state.mixture.emplace(std::make_pair(std::move(key), std::move(lock)),
                          rational_from_entry(entry));
  }
  state.validate();
  return state;
}

}  // namespace probrep::keylock
