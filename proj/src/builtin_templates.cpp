// Copyright 2026 The qaaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bundled answer templates: eleven short-answer scenarios, three score
// levels each. Label 2 answers explain behaviour through a mental state,
// label 1 answers describe the behaviour or its immediate goal, label 0
// answers are literal or irrelevant.

namespace qaaug::detail {

extern const char* const kBuiltinTemplates;

const char* const kBuiltinTemplates = R"TPL(
[template * 2]
2* {pron} felt {feel2}
3* {agent} {act} because {pron} (thought*8|believed*2|assumed|reckoned|figured|suspected) {b2}
2* because {pron} (knew*6|realised|understood|sensed) {b2}
2* {pron} (did not want*5|didn't want*3|hoped not) {b2want}

[template * 1]
2* {pron} felt {feel1}
3* {agent} {act} {p1}
2* {p1}
2* because {p1b}

[template * 0]
2* {pron} felt {feel0}
3* {w0}
2* {agent} {act} because {w0b}
(i don't know*4|dunno|not sure|no idea)

# Mood words: the same tail words carry different scores in different
# questions, so only the question context disambiguates them.
[pool feel2@1]
(scared*8|terrified|fearful|nervous|worried|anxious|alarmed)
[pool feel1@1]
(sneaky*8|uneasy|jumpy|edgy|tense|shaky|timid)
[pool feel0@1]
(hungry*8|wary|startled|spooked|panicky|restless|flustered)
[pool feel2@2]
(scared*8|nervous|worried|anxious|alarmed|uneasy|jumpy)
[pool feel1@2]
(sneaky*8|edgy|tense|shaky|timid|wary|startled)
[pool feel0@2]
(hungry*8|spooked|panicky|restless|flustered|rattled|afraid)
[pool feel2@3]
(scared*8|anxious|alarmed|uneasy|jumpy|edgy|tense)
[pool feel1@3]
(sneaky*8|shaky|timid|wary|startled|spooked|panicky)
[pool feel0@3]
(hungry*8|restless|flustered|rattled|afraid|frightened|terrified)
[pool feel2@4]
(scared*8|uneasy|jumpy|edgy|tense|shaky|timid)
[pool feel1@4]
(sneaky*8|wary|startled|spooked|panicky|restless|flustered)
[pool feel0@4]
(hungry*8|rattled|afraid|frightened|terrified|fearful|nervous)
[pool feel2@5]
(scared*8|edgy|tense|shaky|timid|wary|startled)
[pool feel1@5]
(sneaky*8|spooked|panicky|restless|flustered|rattled|afraid)
[pool feel0@5]
(hungry*8|frightened|terrified|fearful|nervous|worried|anxious)
[pool feel2@6]
(scared*8|shaky|timid|wary|startled|spooked|panicky)
[pool feel1@6]
(sneaky*8|restless|flustered|rattled|afraid|frightened|terrified)
[pool feel0@6]
(hungry*8|fearful|nervous|worried|anxious|alarmed|uneasy)
[pool feel2@7]
(scared*8|wary|startled|spooked|panicky|restless|flustered)
[pool feel1@7]
(sneaky*8|rattled|afraid|frightened|terrified|fearful|nervous)
[pool feel0@7]
(hungry*8|worried|anxious|alarmed|uneasy|jumpy|edgy)
[pool feel2@8]
(scared*8|spooked|panicky|restless|flustered|rattled|afraid)
[pool feel1@8]
(sneaky*8|frightened|terrified|fearful|nervous|worried|anxious)
[pool feel0@8]
(hungry*8|alarmed|uneasy|jumpy|edgy|tense|shaky)
[pool feel2@9]
(scared*8|restless|flustered|rattled|afraid|frightened|terrified)
[pool feel1@9]
(sneaky*8|fearful|nervous|worried|anxious|alarmed|uneasy)
[pool feel0@9]
(hungry*8|jumpy|edgy|tense|shaky|timid|wary)
[pool feel2@10]
(scared*8|rattled|afraid|frightened|terrified|fearful|nervous)
[pool feel1@10]
(sneaky*8|worried|anxious|alarmed|uneasy|jumpy|edgy)
[pool feel0@10]
(hungry*8|tense|shaky|timid|wary|startled|spooked)
[pool feel2@11]
(scared*8|frightened|terrified|fearful|nervous|worried|anxious)
[pool feel1@11]
(sneaky*8|alarmed|uneasy|jumpy|edgy|tense|shaky)
[pool feel0@11]
(hungry*8|timid|wary|startled|spooked|panicky|restless)

# 1: hiding burglars
[pool agent@1]
the (men*6|burglars|robbers|thieves|crooks)
[pool pron@1]
they
[pool act@1]
(hid*5|hide|ducked|crouched)
[pool b2@1]
2* the (police*5|cops|officers|guards) would (see*4|spot|notice|find) them
someone was (coming*3|approaching|watching)
[pool b2want@1]
the (police*5|cops|officers) to (catch*4|find|spot) them
to be (seen*4|noticed|spotted)
[pool p1@1]
to (escape*4|flee|get away)
so they (do not*3|don't) get (caught*5|nabbed|arrested|trapped)
[pool p1b@1]
the (police*5|cops|officers) were (there*3|outside|nearby)
they (stole*3|took|grabbed) the (money*4|cash|jewels)
[pool w0@1]
they were (playing*4|having fun|messing around)
it was (dark*3|night|cold)
[pool w0b@1]
they were (tired*4|sleepy|bored|lazy)
they (liked*3|loved|enjoy) (hiding*3|games)

# 2: white lie about a present
[pool agent@2]
(katie*4|she|the girl)
[pool pron@2]
she
[pool act@2]
(said*5|told her|lied) she (loved*4|liked|adored) the (present*5|gift|jumper)
[pool b2@2]
her (aunt*4|auntie|gran) would (feel*3|be) (sad*4|upset|hurt|unhappy)
[pool b2want@2]
to (hurt*4|upset|offend) her (aunt*4|auntie|gran)
[pool p1@2]
to be (polite*4|nice|kind)
because it was (rude*3|mean) not to
[pool p1b@2]
she was being (polite*4|nice|kind)
you should say (thanks*3|thank you)
[pool w0@2]
she (really*3|truly) (loved*4|liked) the (present*5|gift)
it was (pretty*3|nice|lovely)
[pool w0b@2]
she (wanted*3|needed) a (jumper*3|new one)
the (present*5|gift) was (big*3|red|soft)

# 3: not scared
[pool agent@3]
(simon*4|he|the boy)
[pool pron@3]
he
[pool act@3]
(said*5|claimed|told everyone) he was not (scared*5|afraid|frightened)
[pool b2@3]
the other (kids*4|children|boys) would (laugh at*4|tease|mock) him
they would (think*4|believe) he was a (baby*3|wimp|coward)
[pool b2want@3]
the (kids*4|children|boys) to (know*4|see|find out) he was (scared*5|afraid|frightened)
[pool p1@3]
to look (brave*5|tough|strong|cool)
so he could (stay*3|keep going)
[pool p1b@3]
he (wanted*4|tried) to be (brave*5|tough|strong)
he was (pretending*4|acting|faking)
[pool w0@3]
he was not (scared*5|afraid) at all
he (likes*4|loves) the (dark*3|ride|dog)
[pool w0b@3]
he is (brave*4|big|old)
it was (fun*4|easy|boring)

# 4: the prisoner's double bluff
[pool agent@4]
the (prisoner*4|captain|soldier)
[pool pron@4]
he
[pool act@4]
(said*4|told them|claimed) the (tanks*4|army|troops) were in the (hills*4|mountains|valley)
[pool b2@4]
the (enemy*4|guards|soldiers) would (look*3|search) in the wrong (place*4|spot)
they would not (believe*4|trust) him
[pool b2want@4]
the (enemy*4|guards) to (find*4|discover|locate) the (tanks*4|army|troops)
[pool p1@4]
to (trick*5|fool|confuse) them
to (protect*4|save|help) his (army*4|side|friends)
[pool p1b@4]
he was (lying*4|bluffing|fibbing)
it was a (trick*5|trap|plan)
[pool w0@4]
the (tanks*4|army) were in the (hills*4|mountains)
he (likes*3|loves) (hills*3|walking)
[pool w0b@4]
he was (telling the truth*4|being honest)
they (asked*4|told) him to

# 5: blaming the cat
[pool agent@5]
(emma*4|she|the girl)
[pool pron@5]
she
[pool act@5]
(blamed*4|said it was) the (cat*4|dog|puppy)
[pool b2@5]
her (mum*4|mother|mom) would (punish*3|shout at|tell off) her
her (mum*4|mother) would (believe*3|think) the (cat*4|dog) did it
[pool b2want@5]
to (get into trouble*4|be punished|be told off)
her (mum*4|mother) to (know*4|find out|discover)
[pool p1@5]
so she (would not*3|wouldn't) get (told off*4|punished|grounded)
to (avoid*4|escape|dodge) (trouble*4|punishment)
[pool p1b@5]
she (broke*4|smashed|cracked) the (vase*5|pot|jar)
she was (lying*4|fibbing)
[pool w0@5]
the (cat*4|dog) (broke*4|smashed) it
she (loves*3|likes) the (cat*4|dog)
[pool w0b@5]
the (cat*4|dog) was (naughty*4|bad|silly)
it (fell*4|dropped)

# 6: the empty cookie jar
[pool agent@6]
the (woman*4|lady|mother)
[pool pron@6]
she
[pool act@6]
(looked*4|was) (surprised*5|shocked|amazed)
[pool b2@6]
the (cookies*4|biscuits|cakes) would still be (there*4|inside)
nobody had (eaten*4|taken) them
[pool b2want@6]
the (cookies*4|biscuits|cakes) to be (gone*4|missing|eaten)
[pool p1@6]
because the (jar*4|tin|box) was (empty*5|bare)
the (cookies*4|biscuits) were (gone*4|missing)
[pool p1b@6]
someone (ate*4|took|stole) the (cookies*4|biscuits|cakes)
there was (nothing*4|none) left
[pool w0@6]
she (saw*4|found) a (mouse*4|spider|bug)
she was (hungry*4|starving)
[pool w0b@6]
she (likes*3|loves) (cookies*4|biscuits)
it was (funny*3|silly)

# 7: pretending to sleep
[pool agent@7]
the (man*4|father|dad)
[pool pron@7]
he
[pool act@7]
(pretended*4|acted|faked) to be (asleep*4|sleeping)
[pool b2@7]
the (children*4|kids) would (go away*3|leave him alone|stop)
the (children*4|kids) would (think*3|believe) he was (resting*3|asleep)
[pool b2want@7]
to (play*4|get up|go out) with the (children*4|kids)
[pool p1@7]
because he was (tired*4|exhausted|worn out)
to (rest*4|relax|nap)
[pool p1b@7]
he (wanted*4|needed) (peace*3|quiet|a break)
he (could not*3|couldn't) be (bothered*4|fussed)
[pool w0@7]
he was (asleep*4|sleeping)
he (fell*3|dropped) off the (sofa*4|couch|chair)
[pool w0b@7]
it was (night*4|bedtime|late)
he (likes*3|loves) his (bed*4|pillow)

# 8: the hidden letter
[pool agent@8]
the (girl*4|sister|daughter)
[pool pron@8]
she
[pool act@8]
(hid*4|hide|concealed) the (letter*5|note|card)
[pool b2@8]
her (brother*4|sibling) would (read*4|see|find) it
her (brother*4|sibling) would (tease*3|laugh at|embarrass) her
[pool b2want@8]
her (brother*4|sibling) to (know*4|learn|discover) her (secret*5|crush)
[pool p1@8]
because it was (private*4|secret|personal)
so (nobody*4|no one) could (read*4|see) it
[pool p1b@8]
it was a (secret*5|surprise)
she was (embarrassed*4|shy|ashamed)
[pool w0@8]
she (likes*3|loves) (letters*4|notes|writing)
it was (pink*3|pretty|nice)
[pool w0b@8]
she was (tidying*4|cleaning) her (room*4|desk)
she (lost*4|dropped) it

# 9: sharing lunch
[pool agent@9]
the (boy*4|kid|lad)
[pool pron@9]
he
[pool act@9]
(shared*4|gave away|offered) his (sandwich*4|lunch|food)
[pool b2@9]
his (friend*4|mate|pal) would be (hungry*4|starving)
his (friend*4|mate) would (feel*3|be) (happy*4|glad|pleased)
[pool b2want@9]
his (friend*4|mate|pal) to (feel*3|be) (sad*4|left out|lonely)
[pool p1@9]
to be (kind*4|nice|generous|friendly)
because his (friend*4|mate) had (none*4|nothing)
[pool p1b@9]
he was being (kind*4|nice|generous)
his (friend*4|mate) (forgot*4|lost) his (lunch*4|food)
[pool w0@9]
he (did not*3|didn't) (like*4|want) it
he was (full*4|not hungry)
[pool w0b@9]
the (sandwich*4|food) was (yucky*4|gross|horrible)
he (likes*3|loves) (cheese*4|ham)

# 10: going red
[pool agent@10]
the (man*4|guy|gentleman)
[pool pron@10]
he
[pool act@10]
went (red*4|pink|bright red)
[pool b2@10]
(everyone*4|people|the crowd) was (laughing at*4|staring at|looking at) him
people would (think*3|believe) he was (silly*4|stupid|clumsy)
[pool b2want@10]
(everyone*4|people) to (see*4|notice|watch) him (fall*4|trip|slip)
[pool p1@10]
because he was (embarrassed*5|ashamed|humiliated)
he (fell*4|tripped|slipped) over
[pool p1b@10]
he (felt*4|was) (silly*4|stupid|awkward)
he (fell*4|tripped|slipped) in (public*3|front of people)
[pool w0@10]
he was (hot*4|warm|sweaty)
the sun was (hot*4|bright|strong)
[pool w0b@10]
he (ran*4|rushed|hurried)
he (ate*4|had) a (chilli*3|pepper)

# 11: the surprise party
[pool agent@11]
the (family*4|parents|kids)
[pool pron@11]
they
[pool act@11]
(turned off*4|switched off) the (lights*4|lamps)
[pool b2@11]
(grandma*4|granny|nana) would be (surprised*5|shocked|amazed)
(grandma*4|granny|nana) would (think*4|believe) nobody was (home*4|there|in)
[pool b2want@11]
(grandma*4|granny|nana) to (know*4|guess|find out) about the (party*5|surprise|celebration)
[pool p1@11]
for a (surprise*5|party)
to (surprise*5|shock) (grandma*4|granny|nana)
[pool p1b@11]
it was a (surprise*5|party)
it was her (birthday*5|special day)
[pool w0@11]
it was (bedtime*4|night|late)
they (wanted*3|needed) to (sleep*4|rest)
[pool w0b@11]
the (lights*4|lamps) were (broken*4|too bright)
they (were saving*3|saved) (power*3|electricity)
)TPL";

}  // namespace qaaug::detail
