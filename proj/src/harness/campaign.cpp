#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

#include "v2xsim/error.hpp"
#include "v2xsim/harness.hpp"
#include "v2xsim/receiver.hpp"

namespace v2x {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

enum Purpose : std::uint64_t { kPayload = 1, kFading = 2, kNoise = 3 };

// Per-symbol true channel sampled at the middle of each useful part.
GenieChannel make_genie(const ChannelState& channel, const FrameGeometry& g, double noise_var) {
  GenieChannel genie;
  genie.n_subcarriers = g.n_subcarriers;
  genie.noise_var = noise_var;
  std::vector<int> bins(static_cast<std::size_t>(g.n_subcarriers));
  for (int k = 0; k < g.n_subcarriers; ++k) bins[static_cast<std::size_t>(k)] = subcarrier_to_bin(k, g);
  for (int a = 0; a < channel.n_rx(); ++a) {
    CVec& h = genie.gains.emplace_back();
    h.reserve(static_cast<std::size_t>(g.n_subcarriers * g.symbols_per_slot));
    int start = 0;
    for (int l = 0; l < g.symbols_per_slot; ++l) {
      const int cp = g.cp_length(l);
      const double t = (start + cp + g.fft_size / 2) / g.sample_rate_hz;
      const CVec row = channel.frequency_response(a, t, bins, g.fft_size);
      h.insert(h.end(), row.begin(), row.end());
      start += cp + g.fft_size;
    }
  }
  return genie;
}

}  // namespace

double compute_bler(const BlerPoint& point, BlerKind which) {
  if (point.blocks_tx <= 0) throw DomainError("compute_bler: no transmitted blocks");
  const auto err = which == BlerKind::Control ? point.blocks_err_control : point.blocks_err_data;
  return static_cast<double>(err) / static_cast<double>(point.blocks_tx);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t snr_index,
                             std::uint64_t subframe_index, std::uint64_t purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ snr_index);
  h = splitmix64(h ^ subframe_index);
  return splitmix64(h ^ purpose);
}

SubframeOutcome simulate_subframe(const SimConfig& cfg, const LinkParams& link, double snr_db,
                                  std::uint64_t stream_seed, const SubframeOptions& opts) {
  std::mt19937_64 payload_rng(splitmix64(stream_seed ^ kPayload));
  std::mt19937_64 noise_rng(splitmix64(stream_seed ^ kNoise));

  Bits tb(static_cast<std::size_t>(link.tbs_bits));
  for (auto& b : tb) b = static_cast<std::uint8_t>(payload_rng() & 1u);
  const int group_id = static_cast<int>(payload_rng() % 256);
  const int pscch_shift = kCyclicShifts[payload_rng() % 4];
  const SciMessage sci = make_sci(link, group_id);
  const TxSlot tx = transmit(link, sci, tb, pscch_shift);

  ChannelConfig ch = cfg.channel;
  ch.seed = splitmix64(stream_seed ^ kFading);
  ChannelState channel(ch, link.geometry.sample_rate_hz);
  // Per-RE symbol energy is 1 with unitary transforms, so the reference
  // power for the noise is 1 as well.
  const Waveform rx = add_awgn(channel_apply(channel, tx.waveform), snr_db, 1.0, noise_rng);

  std::vector<ResourceGrid> grids;
  grids.reserve(rx.antennas.size());
  for (const CVec& ant : rx.antennas) grids.push_back(ofdm_demodulate(ant, link.geometry));

  ReceiverOptions ropts;
  ropts.estimator.window = cfg.estimator_window;
  ropts.turbo_iterations = cfg.turbo_iterations;
  GenieChannel genie;
  if (opts.genie_channel) {
    genie = make_genie(channel, link.geometry, noise_variance(snr_db, 1.0));
    ropts.genie = &genie;
  }

  const auto candidates = default_candidates(link);
  const DecodeResult res = receive(grids, candidates, link, ropts);
  SubframeOutcome out;
  out.control_ok = res.control_crc && res.sci && *res.sci == sci;
  out.data_ok = out.control_ok && res.data_crc && res.tb && *res.tb == tb;
  return out;
}

BlerCurve run_campaign(const SimConfig& cfg, const CampaignOptions& opts) {
  validate(cfg);
  const LinkParams link = cfg.link_params();
  const std::size_t n_snr = cfg.snr_db.size();
  const std::size_t per_point = static_cast<std::size_t>(cfg.n_subframes);
  const std::size_t total = n_snr * per_point;

  // 0: both ok, 1: data error, 2: control error (implies data error)
  std::vector<std::uint8_t> outcome(total, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t snr_index = task / per_point;
      const std::size_t subframe = task % per_point;
      try {
        const auto r = simulate_subframe(cfg, link, cfg.snr_db[snr_index],
                                         substream_seed(cfg.seed, snr_index, subframe), opts.subframe);
        outcome[task] = !r.control_ok ? 2 : (!r.data_ok ? 1 : 0);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(total);
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (opts.progress) {
        std::lock_guard lock(progress_mutex);
        opts.progress(d, total);
      }
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  BlerCurve curve;
  curve.label = cfg.curve_label();
  for (std::size_t s = 0; s < n_snr; ++s) {
    BlerPoint p;
    p.snr_db = cfg.snr_db[s];
    p.blocks_tx = static_cast<std::int64_t>(per_point);
    for (std::size_t i = 0; i < per_point; ++i) {
      const std::uint8_t o = outcome[s * per_point + i];
      p.blocks_err_control += (o == 2);
      p.blocks_err_data += (o != 0);
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace v2x
