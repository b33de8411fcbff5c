#include "scatterlab/presets.hpp"

namespace scatterlab {

namespace {

std::vector<Preset> build() {
  std::vector<Preset> out;
  out.push_back({"fig4", Command::ber, "BER vs SNR, one tag, one slot, Rician K_n = 10 and K_ln = 9", json::parse(R"({
    "architectures": ["monostatic", "multistatic"],
    "trials": 200000,
    "fading": [{"name": "rician_k10_k9", "ce_tag": {"law": "rician", "kappa": 9},
                "tag_reader": {"law": "rician", "kappa": 10}}],
    "ber": {"sweep_kind": "snr", "sweep": {"from": "0 dB", "to": "30 dB", "step": "2 dB"},
            "detectors": ["coherent", "noncoherent"]}
  })")});
  out.push_back({"fig5", Command::ber, "bistatic BER vs SNR, Rayleigh emitter link (M_ln = 1), Rician reader link (M_n = 5.7619)",
                 json::parse(R"({
    "architectures": ["multistatic"],
    "trials": 200000,
    "fading": [{"name": "rayleigh_rician_k10", "ce_tag": {"law": "rayleigh"},
                "tag_reader": {"law": "rician", "kappa": 10}}],
    "ber": {"sweep_kind": "snr", "sweep": {"from": "0 dB", "to": "30 dB", "step": "2 dB"},
            "detectors": ["coherent", "noncoherent"]}
  })")});
  out.push_back({"fig6", Command::ber, "BER vs common transmit power on a 40 m grid, random tag location and fading",
                 json::parse(R"({
    "architectures": ["monostatic", "multistatic"],
    "trials": 20000,
    "grid": {"side": "40 m", "resolution": "1 m"},
    "layout": {"reader": ["0 m", "0 m"], "emitters": [["40 m", "40 m"]]},
    "exponent": {"lo": 2, "hi": 2.5},
    "fading": [{"name": "rician_k_u0_20", "ce_tag": {"law": "rician_uniform", "lo": 0, "hi": 20},
                "tag_reader": {"law": "rician_uniform", "lo": 0, "hi": 20}}],
    "ber": {"sweep_kind": "tx_power", "sweep": {"from": "0 dBm", "to": "40 dBm", "step": "2 dB"},
            "detectors": ["coherent", "noncoherent"]}
  })")});
  out.push_back({"fig9", Command::energy, "energy outage vs harvesting threshold, 35 dBm, 8 tags, 4 emitters, 2.5 m grid",
                 json::parse(R"({
    "architectures": ["monostatic", "multistatic"],
    "tx_power": "35 dBm",
    "tags": 8,
    "slots": 4,
    "grid": {"side": "2.5 m", "resolution": "0.125 m"},
    "exponent": {"lo": 2, "hi": 2.5},
    "sub_reference": "extrapolate",
    "fading": [{"name": "nakagami_m_u1_5", "ce_tag": {"law": "nakagami_uniform", "lo": 1, "hi": 5},
                "tag_reader": {"law": "nakagami_uniform", "lo": 1, "hi": 5}}],
    "energy": {"theta_h": {"from": "-20 dBm", "to": "20 dBm", "step": "0.5 dB"}, "topologies": 2000, "mc_draws": 0}
  })")});
  out.push_back({"fig10", Command::outage, "information outage vs SINR threshold, 100 tags, 28 dBm, 4 emitters, 200 m grid",
                 json::parse(R"({
    "architectures": ["monostatic", "multistatic"],
    "tx_power": "28 dBm",
    "tags": 100,
    "slots": 4,
    "grid": {"side": "200 m", "resolution": "5 m"},
    "exponent": {"lo": 2, "hi": 2.5},
    "fading": [{"name": "rayleigh", "ce_tag": {"law": "rayleigh"}, "tag_reader": {"law": "rayleigh"}},
               {"name": "nakagami_m_u1_5", "ce_tag": {"law": "nakagami_uniform", "lo": 1, "hi": 5},
                "tag_reader": {"law": "nakagami_uniform", "lo": 1, "hi": 5}}],
    "outage": {"theta": {"from": "-20 dB", "to": "20 dB", "step": "1 dB"},
               "topologies": 20, "assignments": 10, "fading_draws": 100}
  })")});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError("--preset", "unknown preset \"" + std::string(name) + "\"; known: " + known);
}

}  // namespace scatterlab
