/**
 * Entity network widget: renders each payload graph as depth-1 stars in SVG.
 *
 * Layout is a tiny deterministic force relaxation: parents are pinned on a
 * ring (single parent at the center), children start evenly spaced around
 * their parent and repel siblings for a fixed number of iterations. No
 * randomness, so identical payloads render identical pictures.
 */

import type { GraphPayload, NodeColor } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

const FILL: Record<NodeColor, string> = {
    blue: '#4a90d9',
    green: '#5cb85c',
    pink: '#e678a8',
};

interface Point {
    x: number;
    y: number;
}

export interface GraphLayout {
    positions: Map<string, Point>;
    width: number;
    height: number;
}

export function layoutGraph(graph: GraphPayload, width = 640, height = 420): GraphLayout {
    const positions = new Map<string, Point>();
    const parents = graph.nodes.filter((n) => n.role === 'parent');
    const childrenOf = new Map<string, string[]>();
    for (const edge of graph.edges) {
        const kids = childrenOf.get(edge.from) ?? [];
        kids.push(edge.to);
        childrenOf.set(edge.from, kids);
    }

    parents.forEach((parent, i) => {
        // pinned: one star sits at the center, several share a ring
        const cx = width / 2;
        const cy = height / 2;
        if (parents.length === 1) {
            positions.set(parent.id, { x: cx, y: cy });
        } else {
            const angle = (2 * Math.PI * i) / parents.length;
            const ring = Math.min(width, height) / 3.2;
            positions.set(parent.id, {
                x: cx + ring * Math.cos(angle),
                y: cy + ring * Math.sin(angle),
            });
        }
    });

    for (const parent of parents) {
        const kids = childrenOf.get(parent.id) ?? [];
        const center = positions.get(parent.id)!;
        const radius = 70 + 6 * kids.length;
        const points: Point[] = kids.map((_, j) => {
            const angle = (2 * Math.PI * j) / Math.max(kids.length, 1);
            return {
                x: center.x + radius * Math.cos(angle),
                y: center.y + radius * Math.sin(angle),
            };
        });
        // fixed-step sibling repulsion with a spring back to the orbit radius
        for (let step = 0; step < 30; step++) {
            for (let a = 0; a < points.length; a++) {
                let fx = 0;
                let fy = 0;
                for (let b = 0; b < points.length; b++) {
                    if (a === b) continue;
                    const dx = points[a].x - points[b].x;
                    const dy = points[a].y - points[b].y;
                    const d2 = Math.max(dx * dx + dy * dy, 1);
                    fx += (dx / d2) * 220;
                    fy += (dy / d2) * 220;
                }
                const rx = points[a].x + fx - center.x;
                const ry = points[a].y + fy - center.y;
                const len = Math.max(Math.hypot(rx, ry), 1);
                points[a] = {
                    x: center.x + (rx / len) * radius,
                    y: center.y + (ry / len) * radius,
                };
            }
        }
        kids.forEach((id, j) => positions.set(id, points[j]));
    }

    return { positions, width, height };
}

export function renderGraph(
    root: HTMLElement,
    graph: GraphPayload,
    doc: Document = document,
): SVGSVGElement {
    root.innerHTML = '';
    const layout = layoutGraph(graph);
    const svg = doc.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
    svg.setAttribute('viewBox', `0 0 ${layout.width} ${layout.height}`);
    svg.setAttribute('class', 'entity-graph');

    for (const edge of graph.edges) {
        const from = layout.positions.get(edge.from);
        const to = layout.positions.get(edge.to);
        if (!from || !to) continue;
        const line = doc.createElementNS(SVG_NS, 'line');
        line.setAttribute('class', 'graph-edge');
        line.setAttribute('x1', from.x.toFixed(1));
        line.setAttribute('y1', from.y.toFixed(1));
        line.setAttribute('x2', to.x.toFixed(1));
        line.setAttribute('y2', to.y.toFixed(1));
        svg.appendChild(line);
    }

    for (const node of graph.nodes) {
        const point = layout.positions.get(node.id);
        if (!point) continue;
        const group = doc.createElementNS(SVG_NS, 'g');
        group.setAttribute('class', `graph-node role-${node.role}`);
        group.setAttribute('data-node-id', node.id);
        const circle = doc.createElementNS(SVG_NS, 'circle');
        circle.setAttribute('cx', point.x.toFixed(1));
        circle.setAttribute('cy', point.y.toFixed(1));
        circle.setAttribute('r', node.role === 'parent' ? '26' : '16');
        circle.setAttribute('fill', FILL[node.color]);
        const text = doc.createElementNS(SVG_NS, 'text');
        text.setAttribute('x', point.x.toFixed(1));
        text.setAttribute('y', (point.y + (node.role === 'parent' ? 40 : 30)).toFixed(1));
        text.setAttribute('text-anchor', 'middle');
        text.textContent = node.text;
        group.append(circle, text);
        svg.appendChild(group);
    }

    root.appendChild(svg);
    return svg;
}
