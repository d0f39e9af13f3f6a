import init, { admissibility_table, packing_cost_landscape, detect } from "./pkg/algsieve_web.js";

const $ = (id) => document.getElementById(id);

function renderTable() {
  const data = JSON.parse(admissibility_table(Number($("table-k").value)));
  const out = $("table-out");
  if (data.error) {
    out.textContent = data.error;
    return;
  }
  const k = data.k;
  const cells = new Map(data.cells.map((c) => [`${c.k1},${c.l2}`, c]));
  let html = "<table><tr><th>k1 \\ l2</th>";
  for (let l2 = 0; l2 < k; l2++) html += `<th>${l2}</th>`;
  html += "</tr>";
  for (let k1 = 0; k1 <= k; k1++) {
    html += `<tr><th>${k1}</th>`;
    for (let l2 = 0; l2 < k; l2++) {
      const c = cells.get(`${k1},${l2}`);
      const chosen = data.chosen.k1 === k1 && data.chosen.l2 === l2 ? " class=\"chosen\"" : "";
      html += c ? `<td${chosen} title="Pr = ${c.probability}">${c.log2_cost.toFixed(2)}</td>` : "<td></td>";
    }
    html += "</tr>";
  }
  html += "</table>";
  html += `<p>chosen k1 = ${data.chosen.k1}, l2 = ${data.chosen.l2}, repetitions = ${data.chosen.repetitions}</p>`;
  out.innerHTML = html;
}

function renderLandscape() {
  const data = JSON.parse(packing_cost_landscape(Number($("land-q").value), Number($("land-res").value)));
  if (data.error) {
    $("land-out").textContent = data.error;
    return;
  }
  const canvas = $("land-canvas");
  const ctx = canvas.getContext("2d");
  const n = data.resolution;
  const values = data.grid.flat().filter((v) => v !== null).map(Math.log);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const image = ctx.createImageData(n, n);
  data.grid.forEach((row, i) => {
    row.forEach((v, j) => {
      // beta1 grows to the right, beta2 grows upwards
      const at = 4 * ((n - 1 - j) * n + i);
      const shade = v === null ? 255 : Math.round(255 * (Math.log(v) - lo) / (hi - lo || 1));
      image.data.set(v === null ? [240, 240, 240, 255] : [shade, shade, 255, 255], at);
    });
  });
  const scratch = new OffscreenCanvas(n, n);
  scratch.getContext("2d").putImageData(image, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.drawImage(scratch, 0, 0, canvas.width, canvas.height);
  const x = data.optimum.beta1 * canvas.width;
  const y = (1 - data.optimum.beta2) * canvas.height;
  ctx.strokeStyle = "#c00";
  ctx.beginPath();
  ctx.moveTo(x - 6, y);
  ctx.lineTo(x + 6, y);
  ctx.moveTo(x, y - 6);
  ctx.lineTo(x, y + 6);
  ctx.stroke();
  $("land-out").textContent = JSON.stringify({ optimum: data.optimum, table: data.table }, null, 2);
}

function runDetector() {
  const result = detect($("det-problem").value, $("det-input").value, Number($("det-param").value), Number($("det-seed").value));
  $("det-out").textContent = JSON.stringify(JSON.parse(result), null, 2);
}

await init();
$("table-run").addEventListener("click", renderTable);
$("land-run").addEventListener("click", renderLandscape);
$("det-run").addEventListener("click", runDetector);
renderTable();
renderLandscape();
