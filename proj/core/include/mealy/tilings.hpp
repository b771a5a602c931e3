#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/group.hpp"

namespace mealy {

struct WangTile {
  std::string w;  // west
  std::string s;  // south
  std::string e;  // east
  std::string n;  // north
  auto operator<=>(const WangTile&) const = default;
};

enum class AdjacencyMode { plain, kp };

struct WangTileset {
  std::vector<WangTile> tiles;
  AdjacencyMode mode = AdjacencyMode::plain;
  // Marks tiles added by reflection_close (the T^- part).
  std::vector<bool> reflected;

  bool contains(const WangTile& t) const;
};

// Horizontal-line reflection: (w, s, e, n) -> (w^-1, n, e^-1, s).
WangTile reflect_h(const WangTile& t);
// Vertical-line reflection: (w, s, e, n) -> (e, s^-1, w, n^-1).
WangTile reflect_v(const WangTile& t);

struct DeterminismFlags {
  bool ws = false;
  bool es = false;
  bool wn = false;
  bool en = false;
  bool four_way = false;
  bool operator==(const DeterminismFlags&) const = default;
};

// One tile (q, a, p, b) per transition q --a|b-> p whose states survive: reduced
// drops the sink, restrict keeps only the listed states.
WangTileset tileset_from(const Automaton& m, bool reduced = false,
                         const std::optional<std::vector<StateId>>& restrict = std::nullopt);
DeterminismFlags determinism(const WangTileset& t);

// Transducer t_w --t_s|t_n-> t_e. West/east colors become states (first
// appearance, west before east) and south/north colors letters.
PartialAutomaton transducer_from_tileset(const WangTileset& t);
// Requires disjoint state-side and letter-side colors. Without completion an
// incomplete transducer is an error; with completion a fresh sink receives
// every missing (q, a), outputs assigned in alphabet order.
Automaton automaton_from_tileset(const WangTileset& t, bool sink_complete);

struct TilingWitness {
  enum class Kind { periodic, square, none };
  Kind kind = Kind::none;
  std::size_t m = 0;                          // square side (square and none)
  std::size_t px = 0;                         // horizontal period (periodic)
  std::size_t py = 0;                         // vertical period (periodic)
  std::vector<std::vector<WangTile>> grid;    // grid[row][column], row 0 at the bottom
};

bool validate_witness(const WangTileset& t, const TilingWitness& w);
std::string render_ascii(const TilingWitness& w);

// Fundamental domain read off the cross-diagram of the least H_{1,1} cycle.
TilingWitness periodic_tiling(const Automaton& m);

struct TilingBudget {
  std::size_t row_cap = 1u << 22;  // rows generated across the search
};

TilingWitness can_tile_square(const WangTileset& t, std::size_t m, const TilingBudget& budget = {});

struct TilingStatus {
  enum class Kind { periodic, no_tiling, unknown };
  Kind kind = Kind::unknown;
  TilingWitness witness;
  std::size_t m = 0;              // failing square size for no_tiling
  std::size_t m_reached = 0;      // largest square size settled
  std::size_t k_max = 0;
  std::size_t n_max = 0;
  bool budget_exhausted = false;
};

TilingStatus tiling_status(const WangTileset& t, std::size_t m_max, std::size_t k_max, std::size_t n_max,
                           const TilingBudget& budget = {});

std::optional<LetterWord> synchronizing_word(const Automaton& m);
// q·w coincides for every state q.
bool synchronizes(const Automaton& m, const LetterWord& w);

enum class MaxSyncVariant { plain, h, kp };

bool maxsync(const Automaton& m, std::size_t side, MaxSyncVariant variant = MaxSyncVariant::plain,
             std::size_t step_cap = 1u << 24);

enum class ReflectionAxes { h, v, both };

WangTileset reflection_close(const WangTileset& t, ReflectionAxes axes);

}  // namespace mealy
