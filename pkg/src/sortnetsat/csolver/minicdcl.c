/* minicdcl.c - a compact CDCL SAT solver.
 *
 * Reads DIMACS CNF from argv[1], prints SAT-competition style output
 * ("s SATISFIABLE" + "v ..." model lines, or "s UNSATISFIABLE") and exits
 * with code 10 / 20.  Classic architecture: two-watched-literal propagation,
 * first-UIP clause learning, VSIDS decision heap, phase saving, Luby
 * restarts, and LBD-based learnt-clause reduction at restart time.
 */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static void die(const char *msg) {
    fprintf(stderr, "minicdcl: %s\n", msg);
    exit(1);
}

/* ---------------- growable int vector ---------------- */
typedef struct {
    int sz, cap;
    int *data;
} vec;

static void vpush(vec *v, int x) {
    if (v->sz == v->cap) {
        v->cap = v->cap ? 2 * v->cap : 8;
        v->data = (int *)realloc(v->data, (size_t)v->cap * sizeof(int));
        if (!v->data) die("out of memory");
    }
    v->data[v->sz++] = x;
}

/* ---------------- solver state ---------------- */
static int nvars = 0;

/* clause arena: [size][flags(bit0=learnt, rest=lbd)][lits...] */
static int *arena = NULL;
static int arena_sz = 0, arena_cap = 0;

static vec *watches = NULL; /* per encoded literal */
static vec learnts;         /* refs of learnt clauses */
static vec orig_refs;       /* refs of problem clauses */

static signed char *assigns = NULL; /* 0 unknown, 1 true, -1 false */
static signed char *phase = NULL;
static int *level_ = NULL;
static int *reason_ = NULL; /* clause ref or -1 */
static int *trail = NULL;
static int trail_sz = 0, qhead = 0;
static vec trail_lim;

static double *activity = NULL;
static double var_inc = 1.0;
static int *heap = NULL, *hpos = NULL; /* max-heap on activity */
static int hsz = 0;

static unsigned char *seen = NULL;
static int *lbd_stamp = NULL;
static int lbd_counter = 0;

static long conflicts = 0;
static long max_learnts = 0;

#define VAR(l) ((l) > 0 ? (l) : -(l))
#define LIT_IDX(l) ((l) > 0 ? 2 * (l) : 2 * (-(l)) + 1)

static int value_of(int lit) {
    int v = assigns[VAR(lit)];
    return lit > 0 ? v : -v;
}

/* ---------------- heap ---------------- */
static void hswap(int a, int b) {
    int va = heap[a], vb = heap[b];
    heap[a] = vb;
    heap[b] = va;
    hpos[vb] = a;
    hpos[va] = b;
}

static void siftup(int i) {
    while (i > 0) {
        int p = (i - 1) / 2;
        if (activity[heap[i]] > activity[heap[p]]) {
            hswap(i, p);
            i = p;
        } else
            break;
    }
}

static void siftdown(int i) {
    for (;;) {
        int l = 2 * i + 1, r = l + 1, m = i;
        if (l < hsz && activity[heap[l]] > activity[heap[m]]) m = l;
        if (r < hsz && activity[heap[r]] > activity[heap[m]]) m = r;
        if (m == i) break;
        hswap(i, m);
        i = m;
    }
}

static void hinsert(int v) {
    if (hpos[v] >= 0) return;
    heap[hsz] = v;
    hpos[v] = hsz;
    hsz++;
    siftup(hsz - 1);
}

static int hpop(void) {
    int v = heap[0];
    hpos[v] = -1;
    hsz--;
    if (hsz > 0) {
        heap[0] = heap[hsz];
        hpos[heap[0]] = 0;
        siftdown(0);
    }
    return v;
}

static void var_bump(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
        for (int i = 1; i <= nvars; i++) activity[i] *= 1e-100;
        var_inc *= 1e-100;
    }
    if (hpos[v] >= 0) siftup(hpos[v]);
}

/* ---------------- clauses ---------------- */
static int add_clause_raw(const int *lits, int n, int learnt, int lbd) {
    while (arena_sz + n + 2 > arena_cap) {
        arena_cap = arena_cap ? 2 * arena_cap : 1 << 16;
        arena = (int *)realloc(arena, (size_t)arena_cap * sizeof(int));
        if (!arena) die("out of memory");
    }
    int ref = arena_sz;
    arena[arena_sz++] = n;
    arena[arena_sz++] = (lbd << 1) | (learnt & 1);
    memcpy(arena + arena_sz, lits, (size_t)n * sizeof(int));
    arena_sz += n;
    vpush(&watches[LIT_IDX(lits[0])], ref);
    vpush(&watches[LIT_IDX(lits[1])], ref);
    if (learnt)
        vpush(&learnts, ref);
    else
        vpush(&orig_refs, ref);
    return ref;
}

static void enqueue(int lit, int reason_ref) {
    int v = VAR(lit);
    assigns[v] = lit > 0 ? 1 : -1;
    level_[v] = trail_lim.sz;
    reason_[v] = reason_ref;
    trail[trail_sz++] = lit;
}

static int propagate(void) { /* returns conflicting ref or -1 */
    while (qhead < trail_sz) {
        int p = trail[qhead++];
        vec *ws = &watches[LIT_IDX(-p)];
        int i = 0, j = 0;
        while (i < ws->sz) {
            int cr = ws->data[i++];
            int *c = arena + cr;
            int *lits = c + 2;
            if (lits[0] == -p) {
                lits[0] = lits[1];
                lits[1] = -p;
            }
            if (value_of(lits[0]) == 1) {
                ws->data[j++] = cr;
                continue;
            }
            int sz = c[0];
            int k;
            for (k = 2; k < sz; k++) {
                if (value_of(lits[k]) != -1) {
                    lits[1] = lits[k];
                    lits[k] = -p;
                    vpush(&watches[LIT_IDX(lits[1])], cr);
                    break;
                }
            }
            if (k < sz) continue; /* watch moved */
            ws->data[j++] = cr;
            if (value_of(lits[0]) == -1) {
                while (i < ws->sz) ws->data[j++] = ws->data[i++];
                ws->sz = j;
                return cr;
            }
            enqueue(lits[0], cr);
        }
        ws->sz = j;
    }
    return -1;
}

static void backjump(int blevel) {
    if (trail_lim.sz <= blevel) return;
    int bound = trail_lim.data[blevel];
    for (int t = trail_sz - 1; t >= bound; t--) {
        int v = VAR(trail[t]);
        phase[v] = assigns[v];
        assigns[v] = 0;
        hinsert(v);
    }
    trail_sz = bound;
    qhead = bound;
    trail_lim.sz = blevel;
}

/* 1UIP conflict analysis; fills learnt vec, returns backtrack level, sets lbd */
static vec learnt_c;
static vec toclear;

/* a literal of the learnt clause is redundant when its reason resolves away
 * against literals already in the clause (or fixed at level 0) */
static int lit_redundant(int q) {
    int r = reason_[VAR(q)];
    if (r < 0) return 0;
    int *c = arena + r;
    int sz = c[0];
    int *lits = c + 2;
    for (int k = 1; k < sz; k++) {
        int v = VAR(lits[k]);
        if (level_[v] > 0 && !seen[v]) return 0;
    }
    return 1;
}

static int analyze(int confl, int *out_lbd) {
    learnt_c.sz = 0;
    toclear.sz = 0;
    vpush(&learnt_c, 0); /* slot for the asserting literal */
    int pathC = 0, p = 0;
    int idx = trail_sz - 1;
    int dlevel = trail_lim.sz;
    do {
        int *c = arena + confl;
        int sz = c[0];
        int *lits = c + 2;
        for (int k = (p == 0 ? 0 : 1); k < sz; k++) {
            int q = lits[k];
            int v = VAR(q);
            if (!seen[v] && level_[v] > 0) {
                seen[v] = 1;
                var_bump(v);
                if (level_[v] >= dlevel)
                    pathC++;
                else
                    vpush(&learnt_c, q);
            }
        }
        while (!seen[VAR(trail[idx])]) idx--;
        p = trail[idx];
        confl = reason_[VAR(p)];
        seen[VAR(p)] = 0;
        pathC--;
        idx--;
    } while (pathC > 0);
    learnt_c.data[0] = -p;

    for (int k = 1; k < learnt_c.sz; k++) vpush(&toclear, VAR(learnt_c.data[k]));
    int j = 1;
    for (int k = 1; k < learnt_c.sz; k++)
        if (!lit_redundant(learnt_c.data[k])) learnt_c.data[j++] = learnt_c.data[k];
    learnt_c.sz = j;

    int btlevel = 0;
    if (learnt_c.sz > 1) {
        int mi = 1;
        for (int k = 2; k < learnt_c.sz; k++)
            if (level_[VAR(learnt_c.data[k])] > level_[VAR(learnt_c.data[mi])]) mi = k;
        int tmp = learnt_c.data[1];
        learnt_c.data[1] = learnt_c.data[mi];
        learnt_c.data[mi] = tmp;
        btlevel = level_[VAR(learnt_c.data[1])];
    }
    lbd_counter++;
    int lbd = 0;
    for (int k = 0; k < learnt_c.sz; k++) {
        int lv = level_[VAR(learnt_c.data[k])];
        if (lbd_stamp[lv] != lbd_counter) {
            lbd_stamp[lv] = lbd_counter;
            lbd++;
        }
    }
    for (int k = 0; k < toclear.sz; k++) seen[toclear.data[k]] = 0;
    *out_lbd = lbd;
    return btlevel;
}

/* ------------- level-0 simplification + learnt reduction + GC ------------- */
static int cmp_learnt(const void *a, const void *b) {
    int ra = *(const int *)a, rb = *(const int *)b;
    int la = arena[ra + 1] >> 1, lb = arena[rb + 1] >> 1;
    if (la != lb) return la - lb;
    return arena[ra] - arena[rb]; /* shorter first */
}

static int copy_clause(int cr, int *new_arena, int *new_sz) {
    int n = arena[cr];
    int ref = *new_sz;
    memcpy(new_arena + ref, arena + cr, (size_t)(n + 2) * sizeof(int));
    *new_sz += n + 2;
    return ref;
}

/* returns 0 on unsatisfiability discovered during simplification */
static int reduce_and_simplify(void) {
    /* at decision level 0 reasons are never inspected again */
    for (int t = 0; t < trail_sz; t++) reason_[VAR(trail[t])] = -1;

    if (learnts.sz > max_learnts) {
        qsort(learnts.data, (size_t)learnts.sz, sizeof(int), cmp_learnt);
        int keep = learnts.sz / 2;
        int j = 0;
        for (int i = 0; i < learnts.sz; i++) {
            int cr = learnts.data[i];
            int lbd = arena[cr + 1] >> 1;
            if (i < keep || lbd <= 3)
                learnts.data[j++] = cr;
        }
        learnts.sz = j;
        max_learnts = (long)(max_learnts * 1.2) + 64;
    }

    int *new_arena = (int *)malloc((size_t)arena_cap * sizeof(int));
    if (!new_arena) die("out of memory");
    int new_sz = 0;
    for (int l = 0; l < 2 * (nvars + 1); l++) watches[l].sz = 0;

    vec *lists[2] = {&orig_refs, &learnts};
    for (int which = 0; which < 2; which++) {
        vec *src = lists[which];
        int j = 0;
        for (int i = 0; i < src->sz; i++) {
            int cr = src->data[i];
            int n = arena[cr];
            int *lits = arena + cr + 2;
            int sat = 0, m = 0;
            for (int k = 0; k < n; k++) {
                int val = value_of(lits[k]);
                if (val == 1) {
                    sat = 1;
                    break;
                }
                if (val == 0) lits[m++] = lits[k];
            }
            if (sat) continue;
            if (m == 0) {
                free(new_arena);
                return 0;
            }
            if (m == 1) {
                enqueue(lits[0], -1);
                continue;
            }
            arena[cr] = m;
            int ref = copy_clause(cr, new_arena, &new_sz);
            vpush(&watches[LIT_IDX(new_arena[ref + 2])], ref);
            vpush(&watches[LIT_IDX(new_arena[ref + 3])], ref);
            src->data[j++] = ref;
        }
        src->sz = j;
    }
    free(arena);
    arena = new_arena;
    arena_sz = new_sz;
    return 1;
}

/* ---------------- restarts ---------------- */
static double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1)
        ;
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    return pow(y, seq);
}

/* ---------------- DIMACS ---------------- */
static char *read_all(const char *path, long *len) {
    FILE *f = fopen(path, "rb");
    if (!f) die("cannot open input file");
    fseek(f, 0, SEEK_END);
    *len = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buf = (char *)malloc((size_t)*len + 1);
    if (!buf) die("out of memory");
    if (fread(buf, 1, (size_t)*len, f) != (size_t)*len) die("short read");
    buf[*len] = 0;
    fclose(f);
    return buf;
}

static int *var_stamp = NULL;
static int stamp_gen = 0;

static int root_conflict = 0;

static void commit_clause(vec *cl) {
    if (root_conflict) return;
    stamp_gen++;
    int m = 0, taut = 0;
    for (int i = 0; i < cl->sz; i++) {
        int l = cl->data[i];
        int v = VAR(l);
        if (var_stamp[v] == stamp_gen && ((var_stamp[v + nvars + 1] > 0) != (l > 0))) {
            taut = 1;
            break;
        }
        if (var_stamp[v] == stamp_gen) continue;
        var_stamp[v] = stamp_gen;
        var_stamp[v + nvars + 1] = l > 0 ? 1 : -1;
        cl->data[m++] = l;
    }
    if (taut) return;
    if (m == 0) {
        root_conflict = 1;
        return;
    }
    if (m == 1) {
        int l = cl->data[0];
        if (value_of(l) == -1)
            root_conflict = 1;
        else if (value_of(l) == 0)
            enqueue(l, -1);
        return;
    }
    add_clause_raw(cl->data, m, 0, 0);
}

static void alloc_state(int nv) {
    nvars = nv;
    watches = (vec *)calloc((size_t)(2 * (nv + 1) + 2), sizeof(vec));
    assigns = (signed char *)calloc((size_t)nv + 1, 1);
    phase = (signed char *)calloc((size_t)nv + 1, 1);
    level_ = (int *)calloc((size_t)nv + 1, sizeof(int));
    reason_ = (int *)malloc(((size_t)nv + 1) * sizeof(int));
    trail = (int *)malloc(((size_t)nv + 1) * sizeof(int));
    activity = (double *)calloc((size_t)nv + 1, sizeof(double));
    heap = (int *)malloc(((size_t)nv + 1) * sizeof(int));
    hpos = (int *)malloc(((size_t)nv + 1) * sizeof(int));
    seen = (unsigned char *)calloc((size_t)nv + 1, 1);
    lbd_stamp = (int *)calloc((size_t)nv + 2, sizeof(int));
    var_stamp = (int *)calloc(2 * ((size_t)nv + 1) + 2, sizeof(int));
    if (!watches || !assigns || !phase || !level_ || !reason_ || !trail ||
        !activity || !heap || !hpos || !seen || !lbd_stamp || !var_stamp)
        die("out of memory");
    for (int v = 1; v <= nv; v++) {
        hpos[v] = -1;
        phase[v] = -1;
        reason_[v] = -1;
    }
}

int main(int argc, char **argv) {
    if (argc < 2) die("usage: minicdcl FILE.cnf");
    long len = 0;
    char *buf = read_all(argv[1], &len);
    char *p = buf;
    int declared_vars = 0;
    vec cl = {0, 0, NULL};
    int parsed_header = 0;
    while (*p) {
        while (*p == ' ' || *p == '\t' || *p == '\r' || *p == '\n') p++;
        if (!*p) break;
        if (*p == 'c' || *p == '%') {
            while (*p && *p != '\n') p++;
            continue;
        }
        if (*p == 'p') {
            if (sscanf(p, "p cnf %d", &declared_vars) != 1) die("bad p line");
            alloc_state(declared_vars);
            parsed_header = 1;
            while (*p && *p != '\n') p++;
            continue;
        }
        if (!parsed_header) die("clause before p line");
        char *end;
        long lit = strtol(p, &end, 10);
        if (end == p) die("cannot parse literal");
        p = end;
        if (lit == 0) {
            commit_clause(&cl);
            cl.sz = 0;
        } else {
            if (lit > declared_vars || -lit > declared_vars) die("literal beyond declared vars");
            vpush(&cl, (int)lit);
        }
    }
    if (cl.sz) commit_clause(&cl); /* unterminated final clause */
    free(buf);
    if (!parsed_header) die("missing p line");

    if (root_conflict || propagate() != -1) {
        printf("s UNSATISFIABLE\n");
        return 20;
    }

    for (int v = 1; v <= nvars; v++) hinsert(v);
    max_learnts = orig_refs.sz / 3 + 2000;
    long restart_budget = 100;
    int restart_count = 0;
    long conflicts_at_restart = 0;

    for (;;) {
        int confl = propagate();
        if (confl != -1) {
            conflicts++;
            if (trail_lim.sz == 0) {
                printf("s UNSATISFIABLE\n");
                return 20;
            }
            int lbd = 0;
            int bt = analyze(confl, &lbd);
            backjump(bt);
            if (learnt_c.sz == 1) {
                enqueue(learnt_c.data[0], -1);
            } else {
                int cr = add_clause_raw(learnt_c.data, learnt_c.sz, 1, lbd > 1073741823 ? 1073741823 : lbd);
                enqueue(learnt_c.data[0], cr);
            }
            var_inc /= 0.95;
        } else {
            if (conflicts - conflicts_at_restart >= restart_budget) {
                restart_count++;
                restart_budget = (long)(luby(2.0, restart_count) * 100.0);
                conflicts_at_restart = conflicts;
                backjump(0);
                if (learnts.sz > max_learnts) {
                    if (!reduce_and_simplify()) {
                        printf("s UNSATISFIABLE\n");
                        return 20;
                    }
                    if (propagate() != -1) {
                        printf("s UNSATISFIABLE\n");
                        return 20;
                    }
                }
                continue;
            }
            int v = 0;
            while (hsz > 0) {
                v = hpop();
                if (!assigns[v]) break;
                v = 0;
            }
            if (v == 0) {
                printf("s SATISFIABLE\n");
                int col = 0;
                printf("v");
                for (int u = 1; u <= nvars; u++) {
                    printf(" %d", assigns[u] > 0 ? u : -u);
                    if (++col % 24 == 0 && u < nvars) printf("\nv");
                }
                printf(" 0\n");
                return 10;
            }
            vpush(&trail_lim, trail_sz);
            enqueue(phase[v] > 0 ? v : -v, -1);
        }
    }
}
