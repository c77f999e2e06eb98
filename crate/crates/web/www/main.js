import init, { simulate, report, LifeBoard } from "./pkg/noosphere_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f6fb4", "#d0671b"];

function say(el, text, bad = false) {
  el.textContent = text;
  el.className = bad ? "err" : "";
}

function plot(canvas, cols, data, logy) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 48;
  ctx.clearRect(0, 0, W, H);
  const rows = data.length / cols;
  if (rows < 2) return;
  const f = logy ? (v) => Math.log10(Math.max(v, 1e-300)) : (v) => v;
  let t0 = data[0], t1 = data[(rows - 1) * cols], lo = Infinity, hi = -Infinity;
  for (let i = 0; i < rows; i++) {
    for (let c = 1; c < cols; c++) {
      const v = f(data[i * cols + c]);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (hi === lo) { hi += 1; lo -= 1; }
  const x = (t) => pad + ((t - t0) / (t1 - t0)) * (W - 2 * pad);
  const y = (v) => H - pad - ((f(v) - lo) / (hi - lo)) * (H - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.fillText((logy ? "1e" : "") + hi.toPrecision(4), 4, pad + 4);
  ctx.fillText((logy ? "1e" : "") + lo.toPrecision(4), 4, H - pad);
  ctx.fillText(String(t0), pad, H - pad + 16);
  ctx.fillText(String(t1), W - pad - 20, H - pad + 16);

  for (let c = 1; c < cols; c++) {
    ctx.strokeStyle = COLORS[c - 1];
    ctx.beginPath();
    for (let i = 0; i < rows; i++) {
      const px = x(data[i * cols]), py = y(data[i * cols + c]);
      i ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
    }
    ctx.stroke();
    ctx.fillStyle = COLORS[c - 1];
    ctx.fillText("y" + c, W - pad + 6, pad + 14 * c);
  }
}

function runScenario() {
  const text = $("params").value.trim();
  const params = text ? Float64Array.from(text.split(/[ ,]+/), Number) : new Float64Array();
  try {
    const s = simulate($("sc").value, $("appendix").checked, params, +$("span").value, +$("h").value);
    const data = s.data, cols = s.columns;
    plot($("plot"), cols, data, $("logy").checked);
    say($("scmsg"), `${data.length / cols} samples` + (s.diverged ? ", diverged (partial)" : ""), s.diverged);
    s.free();
  } catch (e) {
    say($("scmsg"), String(e), true);
  }
}

function scenarioDefaults() {
  const sc = $("sc").value;
  $("span").value = sc === "1" ? 17 : sc === "paradigm" ? 100 : 100;
  $("h").disabled = sc === "paradigm";
  $("logy").checked = sc === "1";
}

function runReport() {
  try {
    $("table").textContent = report($("rappendix").checked, +$("horizon").value);
    $("table").className = "";
  } catch (e) {
    $("table").textContent = String(e);
    $("table").className = "err";
  }
}

let board = null, timer = null;
const CELL = 6;

function drawBoard() {
  const cv = $("life"), w = board.width, h = board.height;
  const scale = Math.max(1, Math.min(CELL, Math.floor(900 / w)));
  cv.width = w * scale;
  cv.height = h * scale;
  const ctx = cv.getContext("2d");
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, cv.width, cv.height);
  ctx.fillStyle = "#222";
  const cells = board.cells();
  for (let r = 0; r < h; r++) {
    for (let c = 0; c < w; c++) {
      if (cells[r * w + c]) ctx.fillRect(c * scale, r * scale, scale, scale);
    }
  }
  cv.dataset.scale = scale;
  say($("lmsg"), `generation ${board.generation}, population ${board.population}`);
}

function newBoard() {
  try {
    if (board) board.free();
    board = new LifeBoard(+$("lw").value, +$("lh").value);
    drawBoard();
  } catch (e) {
    say($("lmsg"), String(e), true);
  }
}

function togglePlay() {
  if (timer) {
    clearInterval(timer);
    timer = null;
    $("lplay").textContent = "play";
  } else {
    timer = setInterval(() => { board.step(1); drawBoard(); }, 60);
    $("lplay").textContent = "pause";
  }
}

await init();

$("sc").addEventListener("change", scenarioDefaults);
$("run").addEventListener("click", runScenario);
$("rep").addEventListener("click", runReport);
$("lnew").addEventListener("click", newBoard);
$("lstep").addEventListener("click", () => { board.step(1); drawBoard(); });
$("lplay").addEventListener("click", togglePlay);
$("lmax").addEventListener("click", () => {
  try { board.load_max(); drawBoard(); } catch (e) { say($("lmsg"), String(e), true); }
});
$("lgoe").addEventListener("click", () => {
  try {
    say($("lmsg"), board.garden_of_eden() ? "Garden of Eden: no predecessor" : "has a predecessor");
  } catch (e) {
    say($("lmsg"), String(e), true);
  }
});
$("life").addEventListener("click", (ev) => {
  const s = +ev.target.dataset.scale, rect = ev.target.getBoundingClientRect();
  board.toggle(Math.floor((ev.clientY - rect.top) / s), Math.floor((ev.clientX - rect.left) / s));
  drawBoard();
});

scenarioDefaults();
$("logy").checked = false;
newBoard();
runScenario();
runReport();
