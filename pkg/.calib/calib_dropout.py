import sys, time
sys.path.insert(0, "/root/pkg/src")
import numpy as np, torch
from vtrnav.config import Hyperparams, RunSettings, build_scenario_script
from vtrnav.dataio import dataset_from_records, slice_dataset
from vtrnav.simworld import make_default_world, run_scripted
from vtrnav.viewnet import ViewNet, ViewNetConfig, identity_baseline_l1, one_step_l1, save_viewnet

t0 = time.time()
world = make_default_world(0)
run = RunSettings(scenario="training_mix", training_frames=2000)
records = run_scripted(world, build_scenario_script(run, seed=0), sampling_period=run.teach_period)
ds = dataset_from_records(records, run.teach_period)
train = slice_dataset(ds, 0, 1800)
held = slice_dataset(ds, 1800, None)
base = identity_baseline_l1(held)
print(f"identity baseline held-out L1: {base:.5f}", flush=True)

images = np.stack([f.image for f in train.frames])
cmds = np.array([[f.command.v, f.command.omega] for f in train.frames], np.float32)
n_pairs = len(train) - 1

for p_drop in (0.3, 0.6):
    hp = Hyperparams(epochs=1, batch_size=32, rng_seed=0)
    torch.manual_seed(hp.rng_seed)
    net = ViewNet(ViewNetConfig(feature_dropout=p_drop))
    net.train()
    opt = torch.optim.Adam(net.parameters(), lr=hp.learning_rate)
    gen = torch.Generator().manual_seed(hp.rng_seed)
    best = 9.9
    for epoch in range(10):
        te = time.time()
        perm = torch.randperm(n_pairs, generator=gen).numpy()
        tot, cnt = 0.0, 0
        for start in range(0, n_pairs, hp.batch_size):
            idx = perm[start:start+hp.batch_size]
            if len(idx) < 2:
                continue
            pred, _ = net(torch.from_numpy(images[idx]), torch.from_numpy(cmds[idx]))
            loss = (pred - torch.from_numpy(images[idx+1])).abs().mean()
            opt.zero_grad(); loss.backward(); opt.step()
            tot += loss.item()*len(idx); cnt += len(idx)
        net.eval(); ho = one_step_l1(net, held); net.train()
        best = min(best, ho/base)
        print(f"p={p_drop} epoch {epoch}: train {tot/cnt:.5f} heldout {ho:.5f} ratio {ho/base:.3f} ({time.time()-te:.0f}s)", flush=True)
    print(f"p={p_drop} best ratio {best:.3f}", flush=True)
    save_viewnet(net, f"/root/pkg/.calib/viewnet_p{int(p_drop*10)}.pt")
print(f"total {time.time()-t0:.0f}s", flush=True)
