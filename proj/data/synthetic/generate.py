"""Synthetic stand-in shaped like the meau data: 6 sites x 4 seasons,
10 physico-chemical variables and 13 invertebrate families.

The numbers are made up. They only exercise the command line and plots.
"""
import numpy as np
import pandas as pd
from pathlib import Path

rng = np.random.default_rng(20240607)
out = Path(__file__).parent

seasons = ["autumn", "spring", "summer", "winter"]
sites = [f"S{i}" for i in range(1, 7)]
rows = [f"{season}.{site}" for season in seasons for site in sites]

pollution = np.array([0.0, 2.5, 2.0, 1.2, 0.6, 0.2])
downstream = np.linspace(0.0, 1.0, 6)
season_temp = np.array([12.0, 13.0, 19.0, 6.0])
season_flow = np.array([2.0, 4.0, 1.0, 5.0])

env_names = ["Temp", "Flow", "pH", "Cond", "Bdo5", "Oxyd", "Ammo", "Nitr", "Phos", "Oxyg"]
env = []
for s in range(4):
    for i in range(6):
        p, d = pollution[i], downstream[i]
        env.append([
            season_temp[s] + 2.0 * d + rng.normal(0, 0.5),
            season_flow[s] * (1.0 + 3.0 * d) + rng.normal(0, 0.3),
            7.8 + 0.3 * d - 0.1 * p + rng.normal(0, 0.05),
            300 + 150 * p + 60 * d + rng.normal(0, 15),
            2.0 + 6.0 * p + rng.normal(0, 0.8),
            3.0 + 4.0 * p + rng.normal(0, 0.6),
            0.1 + 3.0 * p**1.5 + abs(rng.normal(0, 0.2)),
            5.0 + 4.0 * p + rng.normal(0, 0.7),
            0.2 + 1.5 * p + abs(rng.normal(0, 0.1)),
            10.5 - 2.5 * p - 0.08 * season_temp[s] + rng.normal(0, 0.4),
        ])
env = pd.DataFrame(np.round(env, 2), index=rows, columns=env_names)

spe_names = ["Eda", "Bsp", "Brh", "Bni", "Bpu", "Cen", "Ecd", "Rhi", "Hla", "Hab", "Par", "Cae", "Eig"]
tolerance = rng.uniform(-1.0, 1.0, size=len(spe_names))
preference = rng.uniform(-1.0, 1.0, size=len(spe_names))
spe = np.zeros((24, len(spe_names)))
for r in range(24):
    s, i = divmod(r, 6)
    mu = np.exp(2.5 + tolerance * (pollution[i] - 1.0) + preference * (downstream[i] - 0.5) + 0.3 * np.sin(s + np.arange(len(spe_names))))
    spe[r] = rng.poisson(mu)
spe = pd.DataFrame(spe.astype(int), index=rows, columns=spe_names)

env.to_csv(out / "env.csv", index_label="")
spe.to_csv(out / "spe.csv", index_label="")
(out / "blocks.txt").write_text("".join(f"{s},6\n" for s in seasons))
pd.DataFrame({"row": rows, "site": [r.split(".")[1] for r in rows]}).to_csv(out / "sites.csv", index=False)
pd.DataFrame({"row": rows, "season": [r.split(".")[0] for r in rows]}).to_csv(out / "seasons.csv", index=False)
