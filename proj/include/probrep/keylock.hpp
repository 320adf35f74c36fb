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
//
// Key and lock systems: a generalized probabilistic theory whose states are
// formal convex combinations of named extreme points, evaluated in exact
// rational arithmetic. A key stores a bit string and can be asked for its
// first n bits (missing bits are generated uniformly); a lock opens when fed
// a bit string matching its stored one (missing input bits are generated
// uniformly), and the stubborn lock never opens. Joint systems mix product
// states; joint effects are positive combinations of product effects or an
// adaptive key-readout-then-lock-input measurement.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "probrep/rational.hpp"

namespace probrep::keylock {

/// Finite bit string over {0,1}, possibly empty, at most 64 bits.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string bits);
  /// The `length` low bits of `index`, most significant first.
  static BitString from_index(std::uint64_t index, int length);

  int length() const { return static_cast<int>(bits_.size()); }
  const std::string& str() const { return bits_; }
  bool empty() const { return bits_.empty(); }
  BitString prefix(int length) const;
  bool is_prefix_of(const BitString& other) const;
  /// True when one string is a prefix of the other.
  bool compatible_with(const BitString& other) const;
  std::uint64_t to_index() const;

  auto operator<=>(const BitString&) const = default;

 private:
  std::string bits_;
};

/// Lock contents: a stored bit string, or the stubborn lock that never opens.
using LockLabel = std::optional<BitString>;
inline LockLabel stubborn_lock() { return std::nullopt; }

/// Convex mixture of extreme key states; weights are positive rationals
/// summing to exactly 1.
struct KeyState {
  std::map<BitString, Rational> mixture;
  static KeyState extreme(BitString key);
  void validate() const;
};

/// Convex mixture of extreme lock states (including the stubborn lock).
struct LockState {
  std::map<LockLabel, Rational> mixture;
  static LockState extreme(LockLabel label);
  void validate() const;
};

/// Key effect: reads the first `depth` bits and accepts a subset of the
/// possible readouts. The unit effect is depth 0 accepting the empty string.
struct KeyEffect {
  int depth = 0;
  std::set<BitString> accepted;
  static KeyEffect single(BitString readout);
  static KeyEffect unit();
  void validate() const;
};

/// Lock effect: feed input `s`, observe open or closed.
struct LockEffect {
  BitString input;
  bool open = true;
};

/// Mixture of product extreme states of a key-lock pair.
struct JointState {
  std::map<std::pair<BitString, LockLabel>, Rational> mixture;
  static JointState product_extreme(BitString key, LockLabel lock);
  void validate() const;
};

/// Probability that the lock in `lock` reacts with `open`/closed to input s.
Rational lock_eval(const BitString& s, bool open, const LockState& lock);

/// Probability that reading the first `effect.depth` key bits lands in the
/// accepted set.
Rational key_eval(const KeyEffect& effect, const KeyState& key);

/// Bilinear evaluation of a product effect on a joint state.
Rational product_effect_eval(const KeyEffect& key_effect, const LockEffect& lock_effect,
                             const JointState& state);

/// The adaptive opening effect sum_s E_K^{n,{s}} (x) E_L^{s,open} evaluated
/// on a joint state: read n key bits, feed them to the lock.
Rational adaptive_effect_eval(int n, const JointState& state);

/// rho^(n): uniform mixture of matched key/lock pairs of length n (n <= 16).
JointState correlated_state(int n);

/// Exact max over lock inputs s of length n of the finest-partition outcome
/// 1-distance between the correlated state and the uncorrelated
/// empty-key (x) stubborn-lock state, under product measurements
/// { E_K^{n,l} (x) E_L^{s,r} }. Equals 2^{-n+1} (n <= 12).
Rational product_family_distance(int n);
Rational product_family_distance_between(int n, const JointState& a, const JointState& b);

/// Statistical distance of the adaptive binary measurement's outcomes
/// between the correlated state and the uncorrelated one; equals 1 (n <= 16,
/// evaluation itself supports any n <= 64).
Rational adaptive_distance(int n);
Rational adaptive_distance_between(int n, const JointState& a, const JointState& b);

/// Verifies, on the truncated extreme sets (strings of length <= max_len
/// plus the stubborn lock), that product effects are exactly as
/// discriminating as the underlying function-space representation: the
/// product-effect evaluation matrix has the same rank as the span of the
/// states, and distinct states keep distinct evaluation vectors. max_len <= 4.
bool local_tomography_check(int max_len);

/// Exact rank of a rational matrix (row-major), by Gaussian elimination.
int rational_matrix_rank(std::vector<std::vector<Rational>> rows);

// JSON serialization: mixtures as arrays of {label, "num", "den"}; the
// stubborn lock serializes as a null lock label.
nlohmann::json to_json(const KeyState& state);
nlohmann::json to_json(const LockState& state);
nlohmann::json to_json(const JointState& state);
KeyState key_state_from_json(const nlohmann::json& j);
LockState lock_state_from_json(const nlohmann::json& j);
JointState joint_state_from_json(const nlohmann::json& j);

}  // namespace probrep::keylock
