#include <algorithm>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

int SlotLayout::pscch_re_count() const {
  return 12 * pscch_n_prb * static_cast<int>(data_symbols.size());
}

int SlotLayout::pssch_re_count() const {
  return 12 * pssch_n_prb * static_cast<int>(data_symbols.size());
}

SlotLayout default_layout(const FrameGeometry& g, int pssch_n_prb) {
  SlotLayout layout;
  layout.pssch_n_prb = pssch_n_prb;
  const int pool = layout.pscch_n_prb + pssch_n_prb;
  if (pssch_n_prb < 1 || pool > g.n_prb)
    throw ConfigError("allocation of " + std::to_string(pool) + " PRBs does not fit in " +
                      std::to_string(g.n_prb) + " PRBs");
  layout.pscch_prb_start = (g.n_prb - pool) / 2;
  layout.pssch_prb_start = layout.pscch_prb_start + layout.pscch_n_prb;
  if (g.numerology.cp() == CpType::Normal)
    layout.dmrs_symbols = {2, 5, 8, 11};
  else
    layout.dmrs_symbols = {1, 4, 7, 10};
  for (int l = 0; l < g.symbols_per_slot; ++l)
    if (std::find(layout.dmrs_symbols.begin(), layout.dmrs_symbols.end(), l) == layout.dmrs_symbols.end())
      layout.data_symbols.push_back(l);
  return layout;
}

ResourceGrid::ResourceGrid(int n_subcarriers, int n_symbols, int slot)
    : n_subcarriers_(n_subcarriers),
      n_symbols_(n_symbols),
      slot_(slot),
      cells_(static_cast<std::size_t>(n_subcarriers) * static_cast<std::size_t>(n_symbols)) {}

double ResourceGrid::energy() const {
  double e = 0.0;
  for (const cf64& c : cells_) e += std::norm(c);
  return e;
}

ResourceGrid map_subframe(std::span<const cf64> control, std::span<const cf64> data,
                          std::span<const cf64> pscch_dmrs, std::span<const cf64> pssch_dmrs,
                          const SlotLayout& layout, const FrameGeometry& g, int slot) {
  if (static_cast<int>(control.size()) != layout.pscch_re_count())
    throw DomainError("map_subframe: control carries " + std::to_string(control.size()) +
                      " symbols, PSCCH holds " + std::to_string(layout.pscch_re_count()));
  if (static_cast<int>(data.size()) != layout.pssch_re_count())
    throw DomainError("map_subframe: data carries " + std::to_string(data.size()) +
                      " symbols, PSSCH holds " + std::to_string(layout.pssch_re_count()));
  if (static_cast<int>(pscch_dmrs.size()) != 12 * layout.pscch_n_prb ||
      static_cast<int>(pssch_dmrs.size()) != 12 * layout.pssch_n_prb)
    throw DomainError("map_subframe: DMRS length does not match allocation width");
  const int c0 = layout.pscch_prb_start, c1 = c0 + layout.pscch_n_prb;
  const int s0 = layout.pssch_prb_start, s1 = s0 + layout.pssch_n_prb;
  if (c0 < 0 || s0 < 0 || c1 > g.n_prb || s1 > g.n_prb || (c0 < s1 && s0 < c1))
    throw DomainError("map_subframe: PSCCH and PSSCH regions overlap or leave the carrier");

  ResourceGrid grid(g.n_subcarriers, g.symbols_per_slot, slot);
  const int kc = 12 * c0, ks = 12 * s0;
  for (int l : layout.dmrs_symbols) {
    for (std::size_t i = 0; i < pscch_dmrs.size(); ++i) grid.at(kc + static_cast<int>(i), l) = pscch_dmrs[i];
    for (std::size_t i = 0; i < pssch_dmrs.size(); ++i) grid.at(ks + static_cast<int>(i), l) = pssch_dmrs[i];
  }
  const std::size_t wc = pscch_dmrs.size(), ws = pssch_dmrs.size();
  std::size_t ic = 0, is = 0;
  for (int l : layout.data_symbols) {
    for (std::size_t i = 0; i < wc; ++i) grid.at(kc + static_cast<int>(i), l) = control[ic++];
    for (std::size_t i = 0; i < ws; ++i) grid.at(ks + static_cast<int>(i), l) = data[is++];
  }
  return grid;
}

CVec extract_region(const ResourceGrid& grid, int prb_start, int n_prb, std::span<const int> symbols) {
  if (prb_start < 0 || 12 * (prb_start + n_prb) > grid.n_subcarriers())
    throw DomainError("extract_region: PRB range outside the grid");
  CVec out;
  out.reserve(static_cast<std::size_t>(12 * n_prb) * symbols.size());
  for (int l : symbols)
    for (int k = 12 * prb_start; k < 12 * (prb_start + n_prb); ++k) out.push_back(grid.at(k, l));
  return out;
}

}  // namespace v2x
