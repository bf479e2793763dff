# Copyright 2026 The ctclab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Independent numpy oracle for the frozen constants in the C++ tests.
#
# Builds the four-state circuit from scratch (no shared code with the library),
# extracts fixed points by a dense SVD of the superoperator assembled column by
# column from the map itself, and prints every value that the tests pin:
# nonlinearity gap, preparation and decorrelation distances, mutual
# information per channel, and the post-selected flag probabilities.
#
# Usage: python3 tests/oracle/four_state_oracle.py  (numpy only)
#
# Flag order u0..u3 is z+z+, z-z+, z+z-, z-z-, which is NOT the computational
# index order; all flag probabilities are <u_k|rho|u_k>.

import numpy as np
from numpy.linalg import svd, eigh
z0=np.array([1,0],complex); z1=np.array([0,1],complex)
xp=(z0+z1)/np.sqrt(2); xm=(z0-z1)/np.sqrt(2)
xi=[z0,z1,xp,xm]
psi=[np.kron(x,z0) for x in xi]
u=[np.kron(z0,z0),np.kron(z1,z0),np.kron(z0,z1),np.kron(z1,z1)]
d=4
def completion(src,dst):
    ov=np.vdot(dst,src)
    if abs(abs(ov)-1)<1e-12:
        ph=np.vdot(src,dst)/abs(ov)  # want O src = dst
        return np.eye(len(src))*ph
    # rotation in span
    phase = ov/abs(ov) if abs(ov)>1e-15 else 1
    dst2 = dst*phase  # now <dst2|src> real positive (if nonzero)
    e1=src; w=dst2-np.vdot(src,dst2)*src; e2=w/np.linalg.norm(w)
    c=np.vdot(e1,dst2).real; s=np.vdot(e2,dst2).real
    # R e1 = c e1 + s e2 ; R e2 = -s e1 + c e2
    P=np.outer(e1,e1.conj()); Q=np.outer(e2,e2.conj())
    R=np.eye(len(src))-P-Q + c*(P+Q) + s*(np.outer(e2,e1.conj())-np.outer(e1,e2.conj()))
    return R*np.conj(phase)  # O src = dst2*conj(phase)=dst
def mixer(j,flags):
    n=len(flags); others=[k for k in range(n) if k!=j]; m=n-1
    F=np.array([[np.exp(2j*np.pi*a*b/m) for b in range(m)] for a in range(m)])/np.sqrt(m)
    M=np.outer(flags[j],flags[j].conj()).astype(complex)
    for a,ka in enumerate(others):
        for b,kb in enumerate(others):
            M+=F[a,b]*np.outer(flags[ka],flags[kb].conj())
    return M
def swap(d):
    S=np.zeros((d*d,d*d))
    for a in range(d):
        for b in range(d): S[b*d+a,a*d+b]=1
    return S
def build(mix):
    O=[completion(psi[j],u[j]) for j in range(4)]
    if mix: O=[mixer(j,u)@O[j] for j in range(4)]
    CU=sum(np.kron(np.outer(u[j],u[j].conj()),O[j]) for j in range(4))
    return CU@swap(4),O
def ptrace(M,dA,dB,keep):
    T=M.reshape(dA,dB,dA,dB)
    return np.einsum('ijkj->ik',T) if keep==0 else np.einsum('ijil->jl',T)
def dmap(V,rin,rc):
    return ptrace(V@np.kron(rin,rc)@V.conj().T,4,4,1)
def superop(V,rin):
    S=np.zeros((16,16),complex)
    for c in range(16):
        E=np.zeros(16,complex);E[c]=1;E=E.reshape(4,4,order='F')
        S[:,c]=dmap(V,rin,E).reshape(-1,order='F')
    return S
for mix in [False,True]:
    V,O=build(mix)
    print('mix',mix, 'unitary',np.allclose(V.conj().T@V,np.eye(16)))
    for s in range(4):
        rin=np.outer(psi[s],psi[s].conj())
        S=superop(V,rin); sv=svd(S-np.eye(16),compute_uv=False)
        print(s,'kernel',sum(sv<1e-9), 'fp ok', np.allclose(dmap(V,rin,np.outer(u[s],u[s].conj())),np.outer(u[s],u[s].conj())))
    C=sum(np.outer(u[j],u[j].conj())@O[j] for j in range(4))
    succ=[]
    for s in range(4):
        v=C@psi[s]; p=np.array([abs(np.vdot(u[k],v))**2 for k in range(4)]); p/=p.sum(); succ.append(p[s])
    print('pctc succ',succ,np.mean(succ))
print('---- oracle values (scrambled circuit)')
V,O=build(True)
def proj(v): return np.outer(v,v.conj())
def fixed(rin):
    S=superop(V,rin); U_,sv,Wh=svd(S-np.eye(16)); k=sum(sv<1e-9)
    vecs=Wh.conj().T[:,-k:]
    return k,vecs
def evolve(rin):
    k,vecs=fixed(rin)
    assert k==1,k
    R=vecs[:,0].reshape(4,4,order='F'); R=R/np.trace(R); R=(R+R.conj().T)/2
    out=ptrace(V@np.kron(rin,R)@V.conj().T,4,4,0)
    return out,R
def td(a,b): return 0.5*np.abs(np.linalg.eigvalsh(a-b)).sum()
r0=proj(psi[0]); r2=proj(psi[2]); mix=(r0+r2)/2
print('kernel dim for mixture', fixed(mix)[0])
o_mix,_=evolve(mix); o0,_=evolve(r0); o2,_=evolve(r2)
print('nonlinearity gap', td(o_mix,(o0+o2)/2))
imp=np.kron(np.eye(2)/2,proj(z0))
print('kernel dim improper', fixed(imp)[0])
oi,Ri=evolve(imp)
o1,_=evolve(proj(psi[1]))
prop=(o0+o1)/2
print('prep equivalence dctc distance', td(prop,oi))
print('improper output diag', np.round(np.diag(oi).real,6), 'fixed pt diag',np.round(np.diag(Ri).real,6))
# decorrelation: alice z basis: z+ -> bob z- (xi1), z- -> bob z+ (xi0)
pj=0.5*np.kron(proj(z0),o1)+0.5*np.kron(proj(z1),o0)
ij=np.kron(np.eye(2)/2,oi)
print('decorrelation distance', td(pj,ij))
# signaling MI
def mi(t):
    t=np.array(t); pa=t.sum(1); pb=t.sum(0); s=0
    for a in range(t.shape[0]):
        for b in range(t.shape[1]):
            if t[a,b]>0: s+=t[a,b]*np.log2(t[a,b]/(pa[a]*pb[b]))
    return s
print('mi test', mi([[3/8,1/8],[1/8,3/8]]))
C=sum(proj(u[j])@O[j] for j in range(4))
def pc(r):
    o=C@r@C.conj().T; return o/np.trace(o)
branches={0:[psi[0],psi[1]],1:[psi[2],psi[3]]}
for name,ch in [('dctc',lambda r: evolve(r)[0]),('pctc',pc),('linear',lambda r:r)]:
    T=np.zeros((2,2))
    for b in (0,1):
        for ps in branches[b]:
            out=ch(proj(ps)); q=[np.vdot(u[k],out@u[k]).real for k in range(4)]
            T[b,0]+=0.25*(q[0]+q[1]); T[b,1]+=0.25*(q[2]+q[3])
    print(name,'proper MI',mi(T),T.tolist())
print('pctc improper out', np.round(pc(imp),6))
for s in range(4):
    o,R=evolve(proj(psi[s])); print(s,np.round(np.diag(o).real,4),np.round(np.diag(R).real,4))
for s in range(4):
    v=C@psi[s]; print('pctc flagprobs',s,[abs(np.vdot(u[k],v))**2/np.linalg.norm(v)**2 for k in range(4)])
