import sys, time, json
sys.path.insert(0, "/root/pkg/src")
import numpy as np, torch
from vtrnav.config import Hyperparams, RunSettings, build_scenario_script
from vtrnav.dataio import dataset_from_records, slice_dataset
from vtrnav.simworld import make_default_world, run_scripted
from vtrnav.viewnet import ViewNet, ViewNetConfig, identity_baseline_l1, one_step_l1, save_viewnet, train_viewnet

t0 = time.time()
world = make_default_world(0)
run = RunSettings(scenario="training_mix", training_frames=2000)
script = build_scenario_script(run, seed=0)
records = run_scripted(world, script, sampling_period=run.teach_period)
ds = dataset_from_records(records, run.teach_period)
print(f"dataset: {len(ds)} frames in {time.time()-t0:.1f}s", flush=True)
train = slice_dataset(ds, 0, 1800)
held = slice_dataset(ds, 1800, None)
base = identity_baseline_l1(held)
print(f"identity baseline held-out L1: {base:.5f}", flush=True)

hp = Hyperparams(epochs=1, batch_size=32, rng_seed=0)
torch.manual_seed(hp.rng_seed)
net = ViewNet(ViewNetConfig())
net.train()
opt = torch.optim.Adam(net.parameters(), lr=hp.learning_rate)
images = np.stack([f.image for f in train.frames])
cmds = np.array([[f.command.v, f.command.omega] for f in train.frames], np.float32)
n_pairs = len(train) - 1
gen = torch.Generator().manual_seed(hp.rng_seed)
for epoch in range(16):
    te = time.time()
    perm = torch.randperm(n_pairs, generator=gen).numpy()
    tot, cnt = 0.0, 0
    for start in range(0, n_pairs, hp.batch_size):
        idx = perm[start:start+hp.batch_size]
        if len(idx) < 2: continue
        batch = torch.from_numpy(images[idx]); target = torch.from_numpy(images[idx+1]); vel = torch.from_numpy(cmds[idx])
        pred, _ = net(batch, vel)
        loss = (pred - target).abs().mean()
        opt.zero_grad(); loss.backward(); opt.step()
        tot += loss.item()*len(idx); cnt += len(idx)
    net.eval()
    ho = one_step_l1(net, held)
    net.train()
    print(f"epoch {epoch}: train {tot/cnt:.5f} heldout {ho:.5f} ratio {ho/base:.3f} ({time.time()-te:.0f}s)", flush=True)
    save_viewnet(net, "/root/pkg/.calib/viewnet_calib.pt")
print(f"total {time.time()-t0:.0f}s", flush=True)
