import init, { analyzeDmdp, regretCurve, decomposeDemo, presets } from "./pkg/marcopolo_web.js";

const $ = (id) => document.getElementById(id);

function guard(out, f) {
  try {
    out.classList.remove("error");
    f();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

function plot(canvas, data) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const regret = data.rounds.map((_, i) => data.benchmark_cum[i] - data.cum_reward[i]);
  const series = [
    [data.cum_reward, "#1f77b4"],
    [data.benchmark_cum, "#999"],
    [regret, "#d62728"],
  ];
  const all = series.flatMap(([s]) => s);
  const lo = Math.min(0, ...all);
  const hi = Math.max(1, ...all);
  const tMax = data.rounds[data.rounds.length - 1];
  const x = (t) => pad + ((w - 2 * pad) * t) / tMax;
  const y = (v) => h - pad - ((h - 2 * pad) * (v - lo)) / (hi - lo);

  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText(hi.toFixed(0), 2, pad);
  ctx.fillText(lo.toFixed(0), 2, h - pad);
  ctx.fillText(String(tMax), w - pad - 20, h - pad + 15);

  for (const [s, color] of series) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.moveTo(x(0), y(0));
    s.forEach((v, i) => ctx.lineTo(x(data.rounds[i]), y(v)));
    ctx.stroke();
  }
}

function table(rows) {
  const body = rows.map((r) => `<tr><td>${r.cycle}</td><td>${r.weight.toFixed(4)}</td></tr>`).join("");
  return `<table><tr><th>cycle</th><th>weight</th></tr>${body}</table>`;
}

async function main() {
  await init();
  $("status").textContent = "Ready.";
  for (const p of JSON.parse(presets())) {
    $("preset").append(new Option(p, p));
  }
  for (const id of ["analyze", "run", "decompose"]) $(id).disabled = false;

  $("analyze").onclick = () =>
    guard($("analyze-out"), () => {
      const r = JSON.parse(analyzeDmdp($("dmdp-text").value));
      delete r.edges;
      $("analyze-out").textContent = JSON.stringify(r, null, 2);
    });

  $("run").onclick = () =>
    guard($("run-out"), () => {
      const data = JSON.parse(regretCurve($("preset").value, Number($("horizon").value), BigInt($("seed").value)));
      plot($("plot"), data);
      const n = data.rounds.length - 1;
      const regret = data.benchmark_cum[n] - data.cum_reward[n];
      $("run-out").textContent =
        `τ = ${data.tau}, ${data.arm_choices.length} episodes; final regret ${regret.toFixed(1)} against ${data.benchmark}`;
    });

  $("decompose").onclick = () =>
    guard($("decompose-out"), () => {
      const d = JSON.parse(decomposeDemo(Number($("k").value), Number($("anchor").value), BigInt($("dseed").value)));
      $("decompose-out").innerHTML =
        `<p>dimension ${d.dimension}, ${d.num_cycles} cycles, reconstruction error ${d.reconstruction_error.toExponential(2)}</p>` +
        `<h3>mixed</h3>${table(d.mixed)}<h3>decomposed</h3>${table(d.decomposed)}`;
    });
}

main().catch((e) => {
  $("status").textContent = `Failed to load: ${e}`;
  $("status").classList.add("error");
});
